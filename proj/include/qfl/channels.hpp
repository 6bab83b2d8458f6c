#pragma once

#include <vector>

#include "qfl/qstate.hpp"

namespace qfl {

inline constexpr double kCompletenessTolerance = 1e-10;

/// CPTP map rho -> sum_i K_i rho K_i^H. Construction checks completeness.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> operators);

  const std::vector<CMatrix>& operators() const noexcept { return ops_; }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  /// || sum_i K_i^H K_i - I ||_F
  double completeness_defect() const;

 private:
  std::vector<CMatrix> ops_;
};

/// Spontaneous-decay rate. Step probability is p = gamma * dt.
struct DecayParams {
  double gamma;

  explicit DecayParams(double rate);
  double step_probability(double dt) const;
};

/// Two-level amplitude damping, basis order (g, e):
/// K0 = |g><g| + sqrt(1-p)|e><e|, K1 = sqrt(p)|g><e|.
KrausChannel amplitude_damping_kraus(double p);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// Continuous-time limit of repeated amplitude damping, general initial state.
DensityMatrix ad_closed_form(const DensityMatrix& rho0, const DecayParams& dp, double t);

/// n applications of amplitude_damping_kraus(gamma t / n).
DensityMatrix iterate_channel(const DensityMatrix& rho0, const DecayParams& dp, double t, std::size_t n);

/// Resonant Rabi cycling from |g>: cos(wt/2)|g> + i sin(wt/2)|e>.
DensityMatrix rabi_state(double omega, double t);

/// (|g> + |e>)/sqrt(2)
DensityMatrix plus_state();

}  // namespace qfl
