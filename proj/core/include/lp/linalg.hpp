#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lp {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Tolerance used by the eigen routines to decide whether an input is
/// Hermitian (elementwise, on M - M^dagger).
inline constexpr double kHermitianTol = 1e-9;
/// Eigenvalues in [-kPsdClampTol, 0) are clamped to zero by psd_sqrt; anything
/// more negative is rejected.
inline constexpr double kPsdClampTol = 1e-9;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Dense row-major complex matrix. Carries operators, states, projections and
/// Gram matrices alike; shape is fixed at construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  /// Entrywise complex conjugate (no transpose).
  ComplexMatrix conj() const;
  Complex trace() const;
  Vector column(std::size_t c) const;
  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void set_block(std::size_t row, std::size_t col, const ComplexMatrix& block);

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
Vector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
/// <v|M|v>
Complex expectation(const ComplexMatrix& m, std::span<const Complex> v);

double frobenius_norm(const ComplexMatrix& m);
/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |M_ij - conj(M_ji)|
double hermitian_deviation(const ComplexMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  /// V f(diag) V^dagger for a real function of the spectrum.
  template <typename F>
  ComplexMatrix map_spectrum(F&& f) const;
};

/// Cyclic complex Jacobi. Throws NotSquare / NotHermitian / NoConvergence.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol = kHermitianTol);
/// Same iteration without accumulating eigenvectors; ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);
double max_eigenvalue(const ComplexMatrix& m, double tol = kHermitianTol);
/// Largest singular value.
double operator_norm(const ComplexMatrix& m);
/// Principal square root of a PSD matrix. Throws NotPositive when an
/// eigenvalue is below -tol.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, double tol = kPsdClampTol);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// (sum_{i != j} |G_ij|^2)^{1/2}
double offdiag_frobenius(const ComplexMatrix& g);

/// Clamp policy shared by the PSD routines: values in [-tol, snap] become
/// exactly zero, values below -tol throw NotPositive. `snap` absorbs roundoff
/// on eigenvalues that are structurally zero.
double clamp_nonnegative(double value, double tol, double snap);
/// Roundoff window for eigenvalues of a matrix whose spectrum has magnitude
/// `scale`.
double roundoff_window(double scale) noexcept;

template <typename F>
ComplexMatrix EigenDecomposition::map_spectrum(F&& f) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = fk * eigenvectors(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eigenvectors(c, k));
    }
  }
  return out;
}

}  // namespace lp
