#include "lp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lp/error.hpp"
#include "lp/json_io.hpp"

namespace lp {

namespace {

constexpr BoundKind kAllKinds[] = {
    BoundKind::weak_lp_pair, BoundKind::pair_general,        BoundKind::multi,
    BoundKind::mub,          BoundKind::trivial_combination, BoundKind::lp_angle,
    BoundKind::separability,
};

std::vector<ComplexMatrix> sqrt_all(std::span<const Effect> effects) {
  std::vector<ComplexMatrix> roots;
  roots.reserve(effects.size());
  for (const auto& e : effects) roots.push_back(psd_sqrt(e.op()));
  return roots;
}

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

void require_count(BoundKind kind, std::span<const Effect> operands, std::size_t count) {
  if (operands.size() != count) {
    throw Error(ErrorKind::BadOperands, std::string(to_string(kind)) + " takes " +
                                            std::to_string(count) + " operands, got " +
                                            std::to_string(operands.size()));
  }
}

std::string digest_for(BoundKind kind, std::span<const Effect> operands, const State& rho) {
  std::vector<ComplexMatrix> ms;
  ms.reserve(operands.size() + 1);
  for (const auto& e : operands) ms.push_back(e.op());
  ms.push_back(rho.rho());
  return operand_digest(to_string(kind), ms);
}

// Rank-one projections with |<v_i|v_j>|^2 = 1/D for all i != j.
void require_unbiased(std::span<const Effect> operands) {
  const std::size_t d = common_dim(operands);
  std::vector<Vector> vs;
  for (const auto& e : operands) vs.push_back(rank_one_vector(e));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const double ov = std::norm(inner(vs[i], vs[j]));
      if (std::abs(ov - 1.0 / static_cast<double>(d)) > kConstructionTol) {
        throw Error(ErrorKind::NotUnbiased, "operands " + std::to_string(i) + " and " +
                                                std::to_string(j) + " have |<i|j>|^2 = " +
                                                std::to_string(ov));
      }
    }
}

double sum_probabilities(std::span<const Effect> operands, const State& rho) {
  double s = 0.0;
  for (const auto& e : operands) s += probability(e, rho);
  return s;
}

Vector pure_vector(const State& rho) {
  if (rho.purity_hint()) return *rho.purity_hint();
  if (std::abs(rho.purity() - 1.0) > kConstructionTol) {
    throw Error(ErrorKind::NotPure, "purity " + std::to_string(rho.purity()));
  }
  const EigenDecomposition eig = hermitian_eig(rho.rho());
  return eig.eigenvectors.column(rho.dim() - 1);
}

}  // namespace

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::weak_lp_pair: return "weak_lp_pair";
    case BoundKind::pair_general: return "pair_general";
    case BoundKind::multi: return "multi";
    case BoundKind::mub: return "mub";
    case BoundKind::trivial_combination: return "trivial_combination";
    case BoundKind::lp_angle: return "lp_angle";
    case BoundKind::separability: return "separability";
  }
  return "unknown";
}

std::optional<BoundKind> bound_kind_from_string(std::string_view name) noexcept {
  for (BoundKind k : kAllKinds)
    if (name == to_string(k)) return k;
  return std::nullopt;
}

BoundReport make_report(BoundKind kind, double lhs, double rhs, std::string digest, double tol) {
  const double slack = rhs - lhs;
  return {kind, lhs, rhs, slack, slack >= -tol, std::move(digest)};
}

double weak_lp_pair_bound(std::span<const Complex> i_vec, std::span<const Complex> j_vec) {
  for (auto v : {i_vec, j_vec}) {
    const double n = norm(v);
    if (std::abs(n - 1.0) > kAssertTol) {
      throw Error(ErrorKind::NotUnit, "vector norm " + std::to_string(n));
    }
  }
  return 1.0 + std::abs(inner(i_vec, j_vec));
}

double cross_norm(const Effect& a, const Effect& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimMismatch,
                "effects of dim " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  return operator_norm(psd_sqrt(a.op()) * psd_sqrt(b.op()));
}

double pair_bound(const Effect& a, const Effect& b) { return 1.0 + cross_norm(a, b); }

double multi_bound(std::span<const Effect> effects) {
  common_dim(effects);
  const std::vector<ComplexMatrix> roots = sqrt_all(effects);
  double sum_sq = 0.0;
  // ||X Y|| = ||(X Y)^dagger|| = ||Y X|| for Hermitian X, Y, so each
  // unordered pair is computed once and counted for both orders.
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double n = operator_norm(roots[i] * roots[j]);
      sum_sq += 2.0 * n * n;
    }
  return 1.0 + std::sqrt(sum_sq);
}

double mub_bound(std::size_t m, std::size_t dim) {
  if (dim < 1) throw Error(ErrorKind::BadDim, "dimension must be positive");
  const double md = static_cast<double>(m);
  return 1.0 + std::sqrt(md * (md - 1.0) / static_cast<double>(dim));
}

double trivial_combination_bound(std::size_t dim) {
  if (dim < 2) throw Error(ErrorKind::BadDim, "trivial combination needs D >= 2");
  const double d = static_cast<double>(dim);
  const double r = std::sqrt(d);
  return (d + 1.0) / 2.0 + 0.5 * (r + 1.0 / r);
}

Vector rank_one_vector(const Effect& p, double tol) {
  const EigenDecomposition eig = hermitian_eig(p.op());
  const auto& vals = eig.eigenvalues;
  const std::size_t d = vals.size();
  if (std::abs(vals.back() - 1.0) > tol || (d > 1 && std::abs(vals[d - 2]) > tol) ||
      std::abs(vals.front()) > tol) {
    throw Error(ErrorKind::NotRankOne, "spectrum top " + std::to_string(vals.back()) +
                                           (d > 1 ? ", next " + std::to_string(vals[d - 2]) : ""));
  }
  return eig.eigenvectors.column(d - 1);
}

LpAngleReport lp_angle_check(const Effect& p, const Effect& q, std::span<const Complex> psi) {
  const Vector i_vec = rank_one_vector(p);
  const Vector j_vec = rank_one_vector(q);
  const State rho = State::pure(psi, kAssertTol);
  const double pp = probability(p, rho);
  const double qq = probability(q, rho);
  const double c = std::abs(inner(i_vec, j_vec));
  const std::vector<ComplexMatrix> ms = {p.op(), q.op(), rho.rho()};
  const std::string digest = operand_digest(to_string(BoundKind::lp_angle), ms);
  const double lhs = safe_acos(c);
  LpAngleReport out{pp, qq, c,
                    make_report(BoundKind::lp_angle, lhs, safe_acos(pp) + safe_acos(qq), digest),
                    make_report(BoundKind::lp_angle, lhs,
                                safe_acos(std::sqrt(std::max(pp, 0.0))) +
                                    safe_acos(std::sqrt(std::max(qq, 0.0))),
                                digest)};
  return out;
}

BoundReport evaluate(BoundKind kind, std::span<const Effect> operands, const State& rho) {
  if (!operands.empty() && common_dim(operands) != rho.dim()) {
    throw Error(ErrorKind::DimMismatch, "operands of dim " + std::to_string(operands[0].dim()) +
                                            " vs state of dim " + std::to_string(rho.dim()));
  }
  switch (kind) {
    case BoundKind::weak_lp_pair: {
      require_count(kind, operands, 2);
      const double rhs =
          weak_lp_pair_bound(rank_one_vector(operands[0]), rank_one_vector(operands[1]));
      return make_report(kind, sum_probabilities(operands, rho), rhs,
                         digest_for(kind, operands, rho));
    }
    case BoundKind::pair_general:
      require_count(kind, operands, 2);
      return make_report(kind, sum_probabilities(operands, rho),
                         pair_bound(operands[0], operands[1]), digest_for(kind, operands, rho));
    case BoundKind::multi:
      return make_report(kind, sum_probabilities(operands, rho), multi_bound(operands),
                         digest_for(kind, operands, rho));
    case BoundKind::mub:
      require_unbiased(operands);
      return make_report(kind, sum_probabilities(operands, rho),
                         mub_bound(operands.size(), rho.dim()), digest_for(kind, operands, rho));
    case BoundKind::trivial_combination:
      require_count(kind, operands, rho.dim() + 1);
      require_unbiased(operands);
      return make_report(kind, sum_probabilities(operands, rho),
                         trivial_combination_bound(rho.dim()), digest_for(kind, operands, rho));
    case BoundKind::lp_angle: {
      require_count(kind, operands, 2);
      const Vector psi = pure_vector(rho);
      return lp_angle_check(operands[0], operands[1], psi).amplitude;
    }
    case BoundKind::separability:
      throw Error(ErrorKind::BadOperands, "separability takes a list of observables");
  }
  throw Error(ErrorKind::BadOperands, "unknown bound kind");
}

BoundReport evaluate(BoundKind kind, std::span<const Povm> observables, const State& rho) {
  if (kind != BoundKind::separability) {
    throw Error(ErrorKind::BadOperands,
                std::string(to_string(kind)) + " takes a list of effects, not observables");
  }
  if (observables.empty()) throw Error(ErrorKind::EmptyInput, "no observables");
  const auto local = static_cast<std::size_t>(std::llround(std::sqrt(double(rho.dim()))));
  if (local * local != rho.dim() || local < 2) {
    throw Error(ErrorKind::DimMismatch,
                "state dim " + std::to_string(rho.dim()) + " is not D^2 for a qudit pair");
  }
  double lhs = 0.0;
  std::vector<ComplexMatrix> ms;
  for (const auto& obs : observables) {
    lhs += m_infinity(obs, rho);
    for (const auto& e : obs.effects()) ms.push_back(e.op());
  }
  ms.push_back(rho.rho());
  return make_report(kind, lhs, mub_bound(observables.size(), local),
                     operand_digest(to_string(kind), ms));
}

}  // namespace lp
