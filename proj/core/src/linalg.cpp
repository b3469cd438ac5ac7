#include "lp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lp/error.hpp"

namespace lp {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) {
    throw Error(ErrorKind::NotSquare,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " input");
  }
  const double dev = hermitian_deviation(m);
  if (!(dev <= tol)) {
    throw Error(ErrorKind::NotHermitian, "max |M - M^dagger| = " + std::to_string(dev));
  }
}

double offdiag_norm_sq(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (r != c) s += std::norm(a(r, c));
  return s;
}

// Cyclic Jacobi on a Hermitian matrix (already validated). Each rotation is
// the unitary U = diag(1, e^{-i phi}) R on the (p, q) plane, where phi is the
// phase of a_pq and R the real rotation that annihilates |a_pq|.
std::vector<double> jacobi(ComplexMatrix a, ComplexMatrix* vectors) {
  const std::size_t n = a.rows();
  // Symmetrize so that the iteration works on an exactly Hermitian matrix.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  if (vectors) *vectors = ComplexMatrix::identity(n);

  const double scale = frobenius_norm(a);
  const double threshold = kJacobiTol * scale;
  int sweep = 0;
  while (true) {
    const double off = std::sqrt(offdiag_norm_sq(a));
    if (off <= threshold || off == 0.0) break;
    if (sweep++ >= kJacobiMaxSweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "off-diagonal norm " + std::to_string(off) + " after " +
                      std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Below roundoff relative to both diagonal entries: drop it.
        const double eps = std::numeric_limits<double>::epsilon();
        if (sweep > 3 && mag < 0.01 * eps * std::abs(app) && mag < 0.01 * eps * std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(apq / mag);
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (vectors) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = a(k, k).real();
  return values;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::ShapeMismatch, "entry count " + std::to_string(entries_.size()) +
                                              " does not match " + std::to_string(rows_) + "x" +
                                              std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) { return outer(v, v); }

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::NotSquare, "trace of non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Vector ComplexMatrix::column(std::size_t c) const {
  if (c >= cols_) throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(c));
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& block) {
  if (row + block.rows() > rows_ || col + block.cols() > cols_) {
    throw Error(ErrorKind::ShapeMismatch, "block does not fit");
  }
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) (*this)(row + r, col + c) = block(r, c);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "product " + std::to_string(lhs.rows()) + "x" +
                                              std::to_string(lhs.cols()) + " * " +
                                              std::to_string(rhs.rows()) + "x" +
                                              std::to_string(rhs.cols()));
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex l = lhs(r, k);
      if (l == Complex{}) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += l * rhs(k, c);
    }
  }
  return out;
}

Vector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "matrix-vector " + std::to_string(m.cols()) + " vs " + std::to_string(v.size()));
  }
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex s{};
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "inner product " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex expectation(const ComplexMatrix& m, std::span<const Complex> v) { return inner(v, m * v); }

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double hermitian_deviation(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "hermitian_deviation");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  ComplexMatrix vectors;
  std::vector<double> values = jacobi(m, &vectors);

  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = values[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  std::vector<double> values = jacobi(m, nullptr);
  std::sort(values.begin(), values.end());
  return values;
}

double max_eigenvalue(const ComplexMatrix& m, double tol) {
  const auto values = hermitian_eigenvalues(m, tol);
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "max_eigenvalue of 0x0 matrix");
  return values.back();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  const ComplexMatrix gram = m.adjoint() * m;
  // M^dagger M is Hermitian up to roundoff proportional to its size.
  const double top = max_eigenvalue(gram, std::max(kHermitianTol, 1e-12 * frobenius_norm(gram)));
  return std::sqrt(std::max(top, 0.0));
}

double roundoff_window(double scale) noexcept {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

double clamp_nonnegative(double value, double tol, double snap) {
  if (value < -tol) {
    throw Error(ErrorKind::NotPositive, "eigenvalue " + std::to_string(value) + " below -" +
                                            std::to_string(tol));
  }
  return value <= snap ? 0.0 : value;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double tol) {
  const EigenDecomposition eig = hermitian_eig(a, std::max(tol, kHermitianTol));
  double scale = 0.0;
  for (double v : eig.eigenvalues) scale = std::max(scale, std::abs(v));
  const double snap = roundoff_window(scale);
  return eig.map_spectrum(
      [&](double v) { return std::sqrt(clamp_nonnegative(v, tol, snap)); });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

double offdiag_frobenius(const ComplexMatrix& g) {
  if (!g.is_square()) throw Error(ErrorKind::NotSquare, "offdiag_frobenius");
  return std::sqrt(offdiag_norm_sq(g));
}

}  // namespace lp
