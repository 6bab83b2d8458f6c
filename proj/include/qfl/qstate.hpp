#pragma once

#include <vector>

#include "qfl/linalg.hpp"

namespace qfl {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// Hermitian operator in energy units (hbar = k_B = 1).
class Hamiltonian {
 public:
  explicit Hamiltonian(CMatrix m);
  static Hamiltonian two_level(double e_ground, double e_excited);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }

 private:
  CMatrix m_;
};

/// Hermitian, unit trace, positive semidefinite up to 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);
  static DensityMatrix pure(std::span<const Complex> psi);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  double purity() const;

 private:
  CMatrix m_;
};

/// Temperature in energy units (k_B = 1). Must be > 0.
class ThermalParams {
 public:
  explicit ThermalParams(double temperature);
  static ThermalParams from_beta(double beta) { return ThermalParams(1.0 / beta); }

  double temperature() const noexcept { return temperature_; }
  double beta() const noexcept { return 1.0 / temperature_; }

 private:
  double temperature_;
};

/// w[n][k] = |<n|k>|^2, rows indexed by energy branch, columns by state branch.
struct OverlapMatrix {
  std::vector<std::vector<double>> w;

  std::size_t dim() const noexcept { return w.size(); }
  double operator()(std::size_t n, std::size_t k) const { return w[n][k]; }
  /// max deviation of any row or column sum from 1
  double stochasticity_defect() const;
};

DensityMatrix gibbs_state(const Hamiltonian& h, const ThermalParams& th);
double partition_function(const Hamiltonian& h, const ThermalParams& th);
double free_energy(const Hamiltonian& h, const ThermalParams& th);

/// Eigenvalues of rho with [-1e-10, 0) clamped to 0; throws InvalidState below that.
std::vector<double> clamped_spectrum(const SpectralDecomposition& rho_spectrum);
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(std::span<const double> probabilities);

double internal_energy(const DensityMatrix& rho, const Hamiltonian& h);

/// Overlaps indexed by branch label on both sides.
OverlapMatrix overlap_matrix(const SpectralDecomposition& energy_basis,
                             const SpectralDecomposition& state_basis);

/// sum_{i != j} |<b_i|rho|b_j>|
double l1_coherence(const DensityMatrix& rho, const SpectralDecomposition& basis);

}  // namespace qfl
