#pragma once

#include <cstdint>
#include <random>

#include "qfl/accounting.hpp"

namespace qfl {

/// Complex Givens rotation in the (p, q) plane: c on the diagonal,
/// -s e^{i phi} at (p, q) and s e^{-i phi} at (q, p).
CMatrix givens_rotation(std::size_t dim, std::size_t p, std::size_t q, double theta, double phi);

/// Product of Givens rotations over every pair (p < q) with uniform angles.
CMatrix random_jacobi_unitary(std::mt19937_64& rng, std::size_t dim);

/// Hermitian matrix with real and imaginary parts uniform in [-1, 1].
CMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim);

struct SyntheticParams {
  std::size_t dim = 2;
  std::size_t steps = 400;
  double t_max = 1.0;
  std::uint64_t seed = 1;
};

/// Smooth (rho(t), H(t)) with rotating eigenbases and drifting, non-crossing
/// spectra: H = U_H(t) diag(E(t)) U_H(t)^H and rho = U_rho(t) diag(p(t)) U_rho(t)^H,
/// where each U is a product of Givens rotations with angles linear in t.
/// The same seed yields the same underlying curves for any `steps`.
Trajectory random_smooth_trajectory(const SyntheticParams& params);

}  // namespace qfl
