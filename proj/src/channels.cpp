#include "qfl/channels.hpp"

#include <cmath>
#include <string>

namespace qfl {

namespace {

void require_nonnegative_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NegativeTime, "t = " + std::to_string(t));
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::ProbabilityOutOfRange, "p = " + std::to_string(p));
}

// Hermitian part with exactly real diagonal; keeps roundoff from compounding
// over many channel applications.
CMatrix hermitize(const CMatrix& m) {
  CMatrix h(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    h(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < m.dim(); ++c) {
      const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
      h(r, c) = z;
      h(c, r) = std::conj(z);
    }
  }
  return h;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw Error(ErrorCode::InvalidState, "Kraus channel needs at least one operator");
  for (const auto& k : ops_) {
    if (k.dim() != ops_.front().dim()) throw Error(ErrorCode::DimMismatch, "Kraus operator dimensions differ");
  }
  const double defect = completeness_defect();
  if (defect > kCompletenessTolerance) {
    throw Error(ErrorCode::InvalidState, "Kraus completeness defect " + std::to_string(defect));
  }
}

double KrausChannel::completeness_defect() const {
  CMatrix sum(dim());
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return frobenius_distance(sum, CMatrix::identity(dim()));
}

DecayParams::DecayParams(double rate) : gamma(rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "decay rate " + std::to_string(rate) + " < 0");
  }
}

double DecayParams::step_probability(double dt) const {
  const double p = gamma * dt;
  require_probability(p);
  return p;
}

KrausChannel amplitude_damping_kraus(double p) {
  require_probability(p);
  CMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}};
  CMatrix k1{{0.0, std::sqrt(p)}, {0.0, 0.0}};
  return KrausChannel({std::move(k0), std::move(k1)});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw Error(ErrorCode::DimMismatch, "apply_channel");
  CMatrix out(rho.dim());
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(hermitize(out));
}

DensityMatrix ad_closed_form(const DensityMatrix& rho0, const DecayParams& dp, double t) {
  require_nonnegative_time(t);
  if (rho0.dim() != 2) throw Error(ErrorCode::DimMismatch, "ad_closed_form requires a two-level state");
  const CMatrix& r = rho0.matrix();
  const double decay = std::exp(-dp.gamma * t);
  const double coherence = std::exp(-0.5 * dp.gamma * t);
  const double excited = r(1, 1).real();
  CMatrix out{{r(0, 0).real() + (1.0 - decay) * excited, coherence * r(0, 1)},
              {coherence * r(1, 0), decay * excited}};
  return DensityMatrix(std::move(out));
}

DensityMatrix iterate_channel(const DensityMatrix& rho0, const DecayParams& dp, double t, std::size_t n) {
  require_nonnegative_time(t);
  if (n == 0) throw Error(ErrorCode::ProbabilityOutOfRange, "iterate_channel needs n >= 1");
  const auto ch = amplitude_damping_kraus(dp.gamma * t / static_cast<double>(n));
  DensityMatrix rho = rho0;
  for (std::size_t i = 0; i < n; ++i) rho = apply_channel(ch, rho);
  return rho;
}

DensityMatrix rabi_state(double omega, double t) {
  require_nonnegative_time(t);
  const double half = 0.5 * omega * t;
  const CVector psi{std::cos(half), Complex(0.0, std::sin(half))};
  return DensityMatrix(CMatrix::projector(psi));
}

DensityMatrix plus_state() {
  const double a = 1.0 / std::sqrt(2.0);
  const CVector psi{a, a};
  return DensityMatrix(CMatrix::projector(psi));
}

}  // namespace qfl
