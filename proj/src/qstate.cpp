#include "qfl/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfl {

namespace {

void require_hermitian(const CMatrix& m, const char* what) {
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTolerance * std::max(1.0, m.frobenius_norm())) {
    throw Error(ErrorCode::NotHermitian, std::string(what) + ": max |A - A^H| = " + std::to_string(defect));
  }
}

// Shifted Boltzmann weights exp(-beta (E_n - E_min)) and E_min; stable for beta -> inf.
struct Boltzmann {
  SpectralDecomposition spectrum;
  std::vector<double> weights;
  double shift;
  double sum;
};

Boltzmann boltzmann(const Hamiltonian& h, const ThermalParams& th) {
  Boltzmann b{hermitian_eig(h.matrix()), {}, 0.0, 0.0};
  b.shift = b.spectrum.values.front();
  for (double e : b.spectrum.values) {
    b.weights.push_back(std::exp(-th.beta() * (e - b.shift)));
    b.sum += b.weights.back();
  }
  return b;
}

}  // namespace

Hamiltonian::Hamiltonian(CMatrix m) : m_(std::move(m)) { require_hermitian(m_, "Hamiltonian"); }

Hamiltonian Hamiltonian::two_level(double e_ground, double e_excited) {
  const double diag[] = {e_ground, e_excited};
  return Hamiltonian(CMatrix::diagonal(diag));
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  require_hermitian(m_, "density matrix");
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw Error(ErrorCode::InvalidState, "density matrix trace " + std::to_string(tr) + " != 1");
  }
  const auto spectrum = hermitian_eig(m_);
  if (spectrum.values.front() < -kPsdTolerance) {
    throw Error(ErrorCode::InvalidState,
                "density matrix eigenvalue " + std::to_string(spectrum.values.front()) + " < 0");
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  CMatrix p = CMatrix::projector(psi);
  p *= 1.0 / norm2;
  return DensityMatrix(std::move(p));
}

double DensityMatrix::purity() const { return trace_product(m_, m_).real(); }

ThermalParams::ThermalParams(double temperature) : temperature_(temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::NonPositiveTemperature, "temperature " + std::to_string(temperature));
  }
}

double OverlapMatrix::stochasticity_defect() const {
  double worst = 0.0;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += w[i][j];
      col += w[j][i];
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return worst;
}

DensityMatrix gibbs_state(const Hamiltonian& h, const ThermalParams& th) {
  const auto b = boltzmann(h, th);
  CMatrix rho(h.dim());
  for (std::size_t n = 0; n < h.dim(); ++n) {
    rho += (b.weights[n] / b.sum) * CMatrix::projector(b.spectrum.vectors[n]);
  }
  return DensityMatrix(std::move(rho));
}

double partition_function(const Hamiltonian& h, const ThermalParams& th) {
  const auto b = boltzmann(h, th);
  return b.sum * std::exp(-th.beta() * b.shift);
}

double free_energy(const Hamiltonian& h, const ThermalParams& th) {
  const auto b = boltzmann(h, th);
  return b.shift - th.temperature() * std::log(b.sum);
}

std::vector<double> clamped_spectrum(const SpectralDecomposition& rho_spectrum) {
  std::vector<double> p;
  p.reserve(rho_spectrum.dim());
  for (double x : rho_spectrum.values) {
    if (x < -kPsdTolerance) {
      throw Error(ErrorCode::InvalidState, "negative density-matrix eigenvalue " + std::to_string(x));
    }
    p.push_back(std::clamp(x, 0.0, 1.0));
  }
  return p;
}

double entropy_of_spectrum(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto p = clamped_spectrum(hermitian_eig(rho.matrix()));
  return entropy_of_spectrum(p);
}

double internal_energy(const DensityMatrix& rho, const Hamiltonian& h) {
  return trace_product(rho.matrix(), h.matrix()).real();
}

OverlapMatrix overlap_matrix(const SpectralDecomposition& energy_basis,
                             const SpectralDecomposition& state_basis) {
  if (energy_basis.dim() != state_basis.dim()) throw Error(ErrorCode::DimMismatch, "overlap_matrix");
  const std::size_t d = energy_basis.dim();
  OverlapMatrix out{std::vector<std::vector<double>>(d, std::vector<double>(d))};
  for (std::size_t n = 0; n < d; ++n) {
    const CVector& vn = energy_basis.vector_of(n);
    for (std::size_t k = 0; k < d; ++k) out.w[n][k] = std::norm(inner(vn, state_basis.vector_of(k)));
  }
  return out;
}

double l1_coherence(const DensityMatrix& rho, const SpectralDecomposition& basis) {
  if (rho.dim() != basis.dim()) throw Error(ErrorCode::DimMismatch, "l1_coherence");
  const std::size_t d = basis.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const CVector rho_bi = matvec(rho.matrix(), basis.vectors[i]);
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j) s += std::abs(inner(basis.vectors[j], rho_bi));
    }
  }
  return s;
}

}  // namespace qfl
