#include "lp/separability.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lp/error.hpp"

namespace lp {

const char* to_string(Verdict v) noexcept {
  return v == Verdict::entangled_detected ? "entangled_detected" : "inconclusive";
}

std::vector<CorrelationObservable> correlation_observables(const MubFamily& f) {
  const std::size_t dim = f.dim;
  if (dim < 2) throw Error(ErrorKind::BadDim, "local dimension must be at least 2");
  std::vector<CorrelationObservable> out;
  out.reserve(f.bases.size());
  for (std::size_t i = 0; i < f.bases.size(); ++i) {
    const ComplexMatrix& basis = f.bases[i];
    if (basis.rows() != dim || basis.cols() != dim) {
      throw Error(ErrorKind::DimMismatch, "basis " + std::to_string(i) + " is not DxD");
    }
    std::vector<ComplexMatrix> local, partner;
    for (std::size_t s = 0; s < dim; ++s) {
      const Vector v = basis.column(s);
      local.push_back(ComplexMatrix::projector(v));
      partner.push_back(local.back().conj());
    }
    std::vector<Effect> elements;
    std::vector<std::string> labels;
    for (std::size_t d = 0; d < dim; ++d) {
      ComplexMatrix q(dim * dim, dim * dim);
      for (std::size_t s = 0; s < dim; ++s) q += kron(local[s], partner[(s + d) % dim]);
      elements.emplace_back(q);
      labels.push_back("d=" + std::to_string(d));
    }
    out.push_back({dim, i, Pvm(std::move(elements), std::move(labels))});
  }
  return out;
}

SeparabilityReport separability_statistic(const State& rho,
                                          const std::vector<CorrelationObservable>& observables) {
  if (observables.empty()) throw Error(ErrorKind::EmptyInput, "no correlation observables");
  const std::size_t dim = observables.front().dim;
  if (rho.dim() != dim * dim) {
    throw Error(ErrorKind::DimMismatch, "state of dim " + std::to_string(rho.dim()) +
                                            " for local dim " + std::to_string(dim));
  }
  std::vector<Povm> povms;
  SeparabilityReport out{dim, {}, 0.0, 0.0, Verdict::inconclusive, {}};
  for (const auto& obs : observables) {
    out.per_basis_m_inf.push_back(m_infinity(obs.elements, rho));
    povms.push_back(obs.elements);
  }
  out.bound = evaluate(BoundKind::separability, povms, rho);
  out.lhs = out.bound.lhs;
  out.rhs = out.bound.rhs;
  out.verdict = out.lhs > out.rhs + kCheckTol ? Verdict::entangled_detected : Verdict::inconclusive;
  return out;
}

SeparabilityReport separability_statistic(const State& rho, const MubFamily& f) {
  return separability_statistic(rho, correlation_observables(f));
}

State max_entangled_state(std::size_t dim) {
  if (dim < 2) throw Error(ErrorKind::BadDim, "local dimension must be at least 2");
  Vector phi(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t k = 0; k < dim; ++k) phi[k * dim + k] = amp;
  return State::pure(phi);
}

State product_state(const State& a, const State& b) {
  if (a.purity_hint() && b.purity_hint()) {
    const Vector& u = *a.purity_hint();
    const Vector& v = *b.purity_hint();
    Vector uv(u.size() * v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) uv[i * v.size() + j] = u[i] * v[j];
    return State::pure(uv);
  }
  return State(kron(a.rho(), b.rho()));
}

State random_separable(std::size_t dim, std::size_t num_terms, Rng& rng, std::size_t factor_rank) {
  if (dim < 1) throw Error(ErrorKind::BadDim, "dimension must be positive");
  if (num_terms < 1) throw Error(ErrorKind::EmptyInput, "num_terms must be at least 1");
  if (factor_rank > dim) {
    throw Error(ErrorKind::BadRank, "factor rank " + std::to_string(factor_rank) + " exceeds " +
                                        std::to_string(dim));
  }
  std::uniform_int_distribution<std::size_t> pick_rank(1, dim);
  auto rank = [&] { return factor_rank == 0 ? pick_rank(rng) : factor_rank; };
  if (num_terms == 1) {
    const State a = random_density(dim, rank(), rng);
    const State b = random_density(dim, rank(), rng);
    return product_state(a, b);
  }
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(num_terms);
  double total = 0.0;
  for (auto& x : w) total += (x = gamma(rng));
  ComplexMatrix rho(dim * dim, dim * dim);
  for (std::size_t k = 0; k < num_terms; ++k) {
    const State a = random_density(dim, rank(), rng);
    const State b = random_density(dim, rank(), rng);
    rho += (w[k] / total) * kron(a.rho(), b.rho());
  }
  rho *= 1.0 / rho.trace().real();
  return State(rho);
}

State random_separable(std::size_t dim, std::size_t num_terms, std::uint64_t seed,
                       std::size_t factor_rank) {
  Rng rng(seed);
  return random_separable(dim, num_terms, rng, factor_rank);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            bool keep_first) {
  if (rho.rows() != dim_a * dim_b || !rho.is_square()) {
    throw Error(ErrorKind::DimMismatch, "partial trace shape");
  }
  if (keep_first) {
    ComplexMatrix out(dim_a, dim_a);
    for (std::size_t r = 0; r < dim_a; ++r)
      for (std::size_t c = 0; c < dim_a; ++c)
        for (std::size_t k = 0; k < dim_b; ++k) out(r, c) += rho(r * dim_b + k, c * dim_b + k);
    return out;
  }
  ComplexMatrix out(dim_b, dim_b);
  for (std::size_t r = 0; r < dim_b; ++r)
    for (std::size_t c = 0; c < dim_b; ++c)
      for (std::size_t k = 0; k < dim_a; ++k) out(r, c) += rho(k * dim_b + r, k * dim_b + c);
  return out;
}

}  // namespace lp
