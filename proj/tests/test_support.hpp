#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library's eigensolver; the reference spectra come from Eigen or from
// closed forms.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "lp/linalg.hpp"
#include "lp/quantum.hpp"

namespace lp::testing {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

/// Ascending eigenvalues from Eigen's self-adjoint solver.
inline Eigen::VectorXd reference_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Largest singular value from Eigen's SVD.
inline double reference_operator_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

/// Top eigenvalue of [[a, b], [conj(b), d]] in closed form.
inline double max_eig_2x2(double a, Complex b, double d) {
  return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
}

inline Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) z = gaussian(rng);
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// G G^dagger with G n x k; rank min(n, k).
inline ComplexMatrix random_psd(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, k, rng);
  return g * g.adjoint();
}

inline Vector random_unit(std::size_t n, std::mt19937_64& rng) {
  Vector v(n);
  double s = 0.0;
  for (auto& z : v) {
    z = gaussian(rng);
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

/// |0>, (|0>+|1>)/sqrt(2) style helpers.
inline Vector ket(std::initializer_list<Complex> amps) { return Vector(amps); }

}  // namespace lp::testing
