#include "qfl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qfl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::InvalidTrajectory: return "InvalidTrajectory";
    case ErrorCode::TrackingFailure: return "TrackingFailure";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::DimMismatch, "matrix dimension must be >= 1");
}

CMatrix::CMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw Error(ErrorCode::DimMismatch, "matrix dimension must be >= 1");
  require_same_dim(data_.size(), dim * dim, "matrix entry count");
  for (const auto& z : data_) {
    if (!is_finite(z)) throw Error(ErrorCode::NonFinite, "matrix entry is not finite");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : CMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    require_same_dim(row.size(), dim_, "matrix row length");
    std::size_t c = 0;
    for (const auto& z : row) {
      if (!is_finite(z)) throw Error(ErrorCode::NonFinite, "matrix entry is not finite");
      (*this)(r, c++) = z;
    }
    ++r;
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFinite, "diagonal entry is not finite");
    m(i, i) = values[i];
  }
  return m;
}

CMatrix CMatrix::projector(std::span<const Complex> v) {
  CMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "matrix product");
  const std::size_t n = a.dim_;
  CMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  }
  return m;
}

CVector matvec(const CMatrix& a, std::span<const Complex> x) {
  require_same_dim(a.dim(), x.size(), "matrix-vector product");
  CVector y(x.size());
  for (std::size_t r = 0; r < x.size(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) s += a(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Complex matrix_element(std::span<const Complex> a, const CMatrix& m, std::span<const Complex> b) {
  return inner(a, matvec(m, b));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_product");
  const std::size_t n = a.dim();
  Complex s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  }
  return s;
}

std::size_t SpectralDecomposition::slot_of(std::size_t label) const {
  for (std::size_t s = 0; s < labels.size(); ++s) {
    if (labels[s] == label) return s;
  }
  throw Error(ErrorCode::InvalidState, "no slot carries label " + std::to_string(label));
}

double SpectralDecomposition::orthonormality_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const Complex target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(vectors[i], vectors[j]) - target));
    }
  }
  return worst;
}

double SpectralDecomposition::reconstruction_defect(const CMatrix& a) const {
  CMatrix r = a;
  for (std::size_t j = 0; j < values.size(); ++j) r -= values[j] * CMatrix::projector(vectors[j]);
  return r.frobenius_norm();
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

// Annihilates a(p,q) with G = diag(1, e^{-i phi}) * R(theta) acting on the
// (p,q) plane: A <- G^H A G, V <- V G.
void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * std::conj(phase);
  const Complex gqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex aip = a(i, p);
    const Complex aiq = a(i, q);
    a(i, p) = aip * gpp + aiq * gqp;
    a(i, q) = aip * gpq + aiq * gqq;
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = vip * gpp + viq * gqp;
    v(i, q) = vip * gpq + viq * gqq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Complex apj = a(p, j);
    const Complex aqj = a(q, j);
    a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
    a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

SpectralDecomposition hermitian_eig(const CMatrix& input) {
  const std::size_t n = input.dim();
  const double scale = input.frobenius_norm();
  const double asym = input.hermiticity_defect();
  if (asym > kHermitianTolerance * scale) {
    throw Error(ErrorCode::NotHermitian, "max |A - A^H| = " + std::to_string(asym));
  }

  // Work on the exactly Hermitian part so roundoff asymmetry cannot accumulate.
  CMatrix a(n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = input(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex z = 0.5 * (input(r, c) + std::conj(input(c, r)));
      a(r, c) = z;
      a(c, r) = std::conj(z);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double target = kJacobiTolerance * scale;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep == kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "off-diagonal residual " + std::to_string(off_diagonal_norm(a)) + " after " +
                      std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) != Complex(0.0)) jacobi_rotate(a, v, p, q);
      }
    }
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  out.labels.resize(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    const std::size_t col = order[slot];
    out.values.push_back(a(col, col).real());
    CVector vec(n);
    for (std::size_t r = 0; r < n; ++r) vec[r] = v(r, col);
    out.vectors.push_back(std::move(vec));
    out.labels[slot] = slot;
  }
  return out;
}

}  // namespace qfl
