#include "lp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lp/error.hpp"

namespace lp {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < m.cols(); ++c) {
      const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
      out(r, c) = avg;
      out(c, r) = std::conj(avg);
    }
  }
  return out;
}

void require_square_hermitian(const ComplexMatrix& m, double tol, ErrorKind kind,
                              const char* what) {
  if (m.empty() || !m.is_square()) {
    throw Error(kind, std::string(what) + " must be a nonempty square matrix");
  }
  const double dev = hermitian_deviation(m);
  if (!(dev <= tol)) {
    throw Error(kind, std::string(what) + " not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + ": dim " + std::to_string(got) +
                                            " vs " + std::to_string(expected));
  }
}

// Complex standard normal: real and imaginary parts N(0, 1/2).
Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  // splitmix64 finalizer over a combination of both inputs.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

State::State(const ComplexMatrix& rho, double tol) {
  require_square_hermitian(rho, tol, ErrorKind::InvalidState, "density operator");
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex{1.0}) > tol) {
    throw Error(ErrorKind::InvalidState,
                "trace " + std::to_string(tr.real()) + (tr.imag() != 0.0 ? " (complex)" : "") +
                    " is not 1");
  }
  rho_ = hermitian_part(rho);
  const double lowest = hermitian_eigenvalues(rho_).front();
  if (lowest < -tol) {
    throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(lowest));
  }
}

State State::pure(std::span<const Complex> psi, double tol) {
  const double n = norm(psi);
  if (psi.empty() || std::abs(n - 1.0) > tol) {
    throw Error(ErrorKind::NotUnit, "state vector norm " + std::to_string(n));
  }
  Vector unit(psi.begin(), psi.end());
  for (auto& z : unit) z /= n;
  State s;
  s.rho_ = hermitian_part(ComplexMatrix::projector(unit));
  s.hint_ = std::move(unit);
  return s;
}

State State::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::BadDim, "dimension must be positive");
  return State(
      (1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

double State::purity() const {
  double s = 0.0;
  for (const auto& z : rho_.entries()) s += std::norm(z);  // tr(rho^2) for Hermitian rho
  return s;
}

Effect::Effect(const ComplexMatrix& op, double tol) {
  require_square_hermitian(op, tol, ErrorKind::InvalidEffect, "effect");
  op_ = hermitian_part(op);
  const auto values = hermitian_eigenvalues(op_);
  if (values.front() < -tol || values.back() > 1.0 + tol) {
    throw Error(ErrorKind::InvalidEffect, "spectrum [" + std::to_string(values.front()) + ", " +
                                              std::to_string(values.back()) +
                                              "] outside [0, 1]");
  }
}

Povm::Povm(std::vector<Effect> effects, std::vector<std::string> labels, double tol)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  const std::size_t d = common_dim(effects_);
  if (labels_.empty()) {
    for (std::size_t i = 0; i < effects_.size(); ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != effects_.size()) {
    throw Error(ErrorKind::InvalidPovm, "label count " + std::to_string(labels_.size()) +
                                            " does not match " +
                                            std::to_string(effects_.size()) + " effects");
  }
  ComplexMatrix total(d, d);
  for (const auto& e : effects_) total += e.op();
  const double residual = frobenius_norm(total - ComplexMatrix::identity(d));
  if (residual > tol) {
    throw Error(ErrorKind::InvalidPovm, "completeness residual " + std::to_string(residual));
  }
}

Pvm::Pvm(std::vector<Effect> effects, std::vector<std::string> labels, double tol)
    : Povm(std::move(effects), std::move(labels), tol) {
  const auto& es = this->effects();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const ComplexMatrix& p = es[i].op();
    if (frobenius_norm(p * p - p) > tol) {
      throw Error(ErrorKind::InvalidPovm, "element " + std::to_string(i) + " is not idempotent", i);
    }
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (frobenius_norm(p * es[j].op()) > tol) {
        throw Error(ErrorKind::InvalidPovm,
                    "elements " + std::to_string(i) + " and " + std::to_string(j) +
                        " are not orthogonal",
                    j);
      }
    }
  }
}

Pvm Pvm::from_basis(const ComplexMatrix& unitary) {
  if (!unitary.is_square() || unitary.empty()) {
    throw Error(ErrorKind::NotSquare, "basis matrix must be square");
  }
  std::vector<Effect> effects;
  effects.reserve(unitary.cols());
  for (std::size_t c = 0; c < unitary.cols(); ++c) {
    effects.emplace_back(ComplexMatrix::projector(unitary.column(c)));
  }
  return Pvm(std::move(effects));
}

Pvm Pvm::computational(std::size_t dim) { return from_basis(ComplexMatrix::identity(dim)); }

double probability(const Effect& a, const State& rho) {
  require_dim(rho.dim(), a.dim(), "probability");
  const ComplexMatrix& r = rho.rho();
  const ComplexMatrix& op = a.op();
  double p = 0.0;
  const std::size_t d = rho.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p += (r(i, j) * op(j, i)).real();
  return p;
}

double clamp_probability(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

double m_infinity(const Povm& p, const State& rho) {
  if (p.size() == 0) throw Error(ErrorKind::EmptyInput, "empty POVM");
  double best = probability(p.effects().front(), rho);
  for (std::size_t i = 1; i < p.size(); ++i) best = std::max(best, probability(p.effects()[i], rho));
  return best;
}

Vector haar_random_vector(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::BadDim, "dimension must be positive");
  Vector v(dim);
  double n = 0.0;
  while (n < 1e-150) {
    for (auto& z : v) z = complex_gaussian(rng);
    n = norm(v);
  }
  for (auto& z : v) z /= n;
  return v;
}

State haar_random_pure(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return State::pure(haar_random_vector(dim, rng));
}

State random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::BadDim, "dimension must be positive");
  if (rank < 1 || rank > dim) {
    throw Error(ErrorKind::BadRank,
                "rank " + std::to_string(rank) + " not in [1, " + std::to_string(dim) + "]");
  }
  // Haar vector on system (x) ancilla, index = s * rank + a; trace out a.
  const Vector joint = haar_random_vector(dim * rank, rng);
  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Complex s{};
      for (std::size_t a = 0; a < rank; ++a) s += joint[r * rank + a] * std::conj(joint[c * rank + a]);
      rho(r, c) = s;
    }
  if (rank == 1) {
    Vector psi(dim);
    for (std::size_t r = 0; r < dim; ++r) psi[r] = joint[r];
    return State::pure(psi);
  }
  // Renormalize away accumulated roundoff in the trace.
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  return State(rho);
}

State random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::BadDim, "dimension must be positive");
  // Modified Gram-Schmidt on a Ginibre matrix, column by column. The
  // resulting Q has the positive-diagonal-R convention, which is Haar.
  ComplexMatrix q(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    while (true) {
      Vector v(dim);
      for (auto& z : v) z = complex_gaussian(rng);
      for (std::size_t k = 0; k < c; ++k) {
        Complex proj{};
        for (std::size_t r = 0; r < dim; ++r) proj += std::conj(q(r, k)) * v[r];
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * q(r, k);
      }
      const double n = norm(v);
      if (n < 1e-8) continue;
      for (std::size_t r = 0; r < dim; ++r) q(r, c) = v[r] / n;
      break;
    }
  }
  return q;
}

Effect random_effect(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = haar_random_unitary(dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> spectrum(dim);
  for (auto& v : spectrum) v = unit(rng);
  return Effect(u * ComplexMatrix::diagonal(spectrum) * u.adjoint());
}

Effect random_projection(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank > dim) {
    throw Error(ErrorKind::BadRank,
                "rank " + std::to_string(rank) + " exceeds dim " + std::to_string(dim));
  }
  const ComplexMatrix u = haar_random_unitary(dim, rng);
  ComplexMatrix p(dim, dim);
  for (std::size_t k = 0; k < rank; ++k) p += ComplexMatrix::projector(u.column(k));
  return Effect(p);
}

std::size_t common_dim(std::span<const Effect> effects) {
  if (effects.empty()) throw Error(ErrorKind::EmptyInput, "no effects given");
  const std::size_t d = effects.front().dim();
  for (const auto& e : effects) require_dim(d, e.dim(), "effect list");
  return d;
}

OracleResult max_sum_oracle(std::span<const Effect> effects) {
  const std::size_t d = common_dim(effects);
  ComplexMatrix total(d, d);
  for (const auto& e : effects) total += e.op();
  const EigenDecomposition eig = hermitian_eig(total);
  const Vector top = eig.eigenvectors.column(d - 1);
  return {eig.eigenvalues.back(), State::pure(top)};
}

}  // namespace lp
