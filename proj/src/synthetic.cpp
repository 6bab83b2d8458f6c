#include "qfl/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace qfl {

CMatrix givens_rotation(std::size_t dim, std::size_t p, std::size_t q, double theta, double phi) {
  CMatrix g = CMatrix::identity(dim);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e = std::polar(1.0, phi);
  g(p, p) = c;
  g(q, q) = c;
  g(p, q) = -s * e;
  g(q, p) = s * std::conj(e);
  return g;
}

CMatrix random_jacobi_unitary(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  CMatrix u = CMatrix::identity(dim);
  for (std::size_t p = 0; p + 1 < dim; ++p) {
    for (std::size_t q = p + 1; q < dim; ++q) u = u * givens_rotation(dim, p, q, angle(rng), angle(rng));
  }
  return u;
}

CMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  CMatrix a(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    a(r, r) = entry(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex z(entry(rng), entry(rng));
      a(r, c) = z;
      a(c, r) = std::conj(z);
    }
  }
  return a;
}

namespace {

// Angles theta(t) = theta0 + rate * t for each rotation plane.
struct RotationPath {
  std::vector<double> theta0, theta_rate, phi0, phi_rate;

  RotationPath(std::mt19937_64& rng, std::size_t pairs) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> rate(-1.5, 1.5);
    for (std::size_t i = 0; i < pairs; ++i) {
      theta0.push_back(angle(rng));
      theta_rate.push_back(rate(rng));
      phi0.push_back(angle(rng));
      phi_rate.push_back(rate(rng));
    }
  }

  CMatrix at(std::size_t dim, double t) const {
    CMatrix u = CMatrix::identity(dim);
    std::size_t i = 0;
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q, ++i) {
        u = u * givens_rotation(dim, p, q, theta0[i] + theta_rate[i] * t, phi0[i] + phi_rate[i] * t);
      }
    }
    return u;
  }
};

// level_n(t) = n * spacing + amp_n sin(freq_n t + phase_n); |amp| < spacing / 2
// keeps the levels ordered for all t.
struct LevelPath {
  double spacing;
  std::vector<double> amp, freq, phase;

  LevelPath(std::mt19937_64& rng, std::size_t dim, double spacing_, double max_amp) : spacing(spacing_) {
    std::uniform_real_distribution<double> a(-max_amp, max_amp);
    std::uniform_real_distribution<double> f(0.5, 3.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    for (std::size_t n = 0; n < dim; ++n) {
      amp.push_back(a(rng));
      freq.push_back(f(rng));
      phase.push_back(ph(rng));
    }
  }

  std::vector<double> at(double t) const {
    std::vector<double> v;
    for (std::size_t n = 0; n < amp.size(); ++n) {
      v.push_back(static_cast<double>(n) * spacing + amp[n] * std::sin(freq[n] * t + phase[n]));
    }
    return v;
  }
};

CMatrix conjugate_diagonal(const CMatrix& u, const std::vector<double>& diag) {
  return u * CMatrix::diagonal(diag) * u.adjoint();
}

}  // namespace

Trajectory random_smooth_trajectory(const SyntheticParams& params) {
  const std::size_t d = params.dim;
  if (d < 1 || params.steps < 1) throw Error(ErrorCode::InvalidSpec, "synthetic trajectory needs dim >= 1, steps >= 1");
  std::mt19937_64 rng(params.seed);
  const std::size_t pairs = d * (d - 1) / 2;
  const RotationPath energy_rotation(rng, pairs);
  const RotationPath state_rotation(rng, pairs);
  const LevelPath levels(rng, d, 1.0, 0.3);
  const LevelPath log_weights(rng, d, 0.8, 0.2);

  std::vector<Sample> samples;
  samples.reserve(params.steps + 1);
  for (std::size_t i = 0; i <= params.steps; ++i) {
    const double t = params.t_max * static_cast<double>(i) / static_cast<double>(params.steps);
    std::vector<double> p = log_weights.at(t);
    double z = 0.0;
    for (auto& x : p) z += (x = std::exp(-x));
    for (auto& x : p) x /= z;

    CMatrix h = conjugate_diagonal(energy_rotation.at(d, t), levels.at(t));
    CMatrix rho = conjugate_diagonal(state_rotation.at(d, t), p);
    // Remove the O(eps) non-Hermitian part introduced by the products.
    h = 0.5 * (h + h.adjoint());
    rho = 0.5 * (rho + rho.adjoint());
    samples.push_back(Sample{t, Hamiltonian(std::move(h)), DensityMatrix(std::move(rho))});
  }
  return Trajectory(std::move(samples));
}

}  // namespace qfl
