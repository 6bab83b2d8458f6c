#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qfl/error.hpp"

namespace qfl {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. All entries are finite.
class CMatrix {
 public:
  /// dim x dim zero matrix.
  explicit CMatrix(std::size_t dim);
  /// Row-major entries; throws DimMismatch unless entries.size() == dim*dim
  /// and NonFinite on NaN/inf.
  CMatrix(std::size_t dim, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const double> values);
  /// |v><v|
  static CMatrix projector(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max |A_ij - conj(A_ji)|
  double hermiticity_defect() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// A * x
CVector matvec(const CMatrix& a, std::span<const Complex> x);
/// <a|b> (conjugate-linear in a)
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
/// <a|M|b>
Complex matrix_element(std::span<const Complex> a, const CMatrix& m, std::span<const Complex> b);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// tr(A B) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

/// Eigenvalues/eigenvectors of a Hermitian matrix. Slots are ordered by
/// ascending eigenvalue when produced by hermitian_eig; `labels[slot]` is the
/// stable branch id assigned by track_eigenpairs (identity when fresh).
struct SpectralDecomposition {
  std::vector<double> values;
  std::vector<CVector> vectors;
  std::vector<std::size_t> labels;

  std::size_t dim() const noexcept { return values.size(); }
  /// Slot currently carrying branch `label`.
  std::size_t slot_of(std::size_t label) const;
  double value_of(std::size_t label) const { return values[slot_of(label)]; }
  const CVector& vector_of(std::size_t label) const { return vectors[slot_of(label)]; }

  /// max |<v_i|v_j> - delta_ij|
  double orthonormality_defect() const;
  /// || A - sum_j values[j] |v_j><v_j| ||_F
  double reconstruction_defect(const CMatrix& a) const;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;

/// Cyclic complex Jacobi diagonalization. Throws NotHermitian when
/// max|A - A^H| > 1e-12 ||A||_F, NoConvergence after 50 sweeps.
SpectralDecomposition hermitian_eig(const CMatrix& a);

/// |<a_i|b_j>|^2 over the slots of two decompositions.
std::vector<std::vector<double>> overlap_weights(const SpectralDecomposition& a,
                                                 const SpectralDecomposition& b);

/// Permutation maximizing sum_i weight[i][perm[i]] (Hungarian method).
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight);

/// Options for branch matching across one step.
struct TrackingOptions {
  /// Eigenvalues closer than this (relative to the spectral scale) form a
  /// degenerate cluster; matches inside a cluster are exempt from the
  /// overlap check.
  double degeneracy_tolerance = 1e-9;
  /// A non-degenerate branch whose matched overlap falls below this is
  /// reported as a tracking failure.
  double min_overlap = 0.5;
};

/// Relabels `next` so that branch identities follow `prev` by maximal
/// eigenvector overlap. Values/vectors stay paired; only labels change.
SpectralDecomposition track_eigenpairs(const SpectralDecomposition& prev,
                                       const SpectralDecomposition& next,
                                       const TrackingOptions& options = {});

}  // namespace qfl
