#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lp/linalg.hpp"
#include "lp/quantum.hpp"

namespace lp {

/// A verdict holds when slack >= -kCheckTol.
inline constexpr double kCheckTol = 1e-9;

enum class BoundKind {
  weak_lp_pair,
  pair_general,
  multi,
  mub,
  trivial_combination,
  lp_angle,
  separability,
};

const char* to_string(BoundKind kind) noexcept;
std::optional<BoundKind> bound_kind_from_string(std::string_view name) noexcept;

/// One evaluated inequality lhs <= rhs. lhs is reported un-clamped.
struct BoundReport {
  BoundKind kind;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
  bool holds;
  std::string inputs_digest;  // hex SHA-256 of the canonical operand serialization
};

BoundReport make_report(BoundKind kind, double lhs, double rhs, std::string digest,
                        double tol = kCheckTol);

/// 1 + |<i|j>| for unit vectors; throws NotUnit.
double weak_lp_pair_bound(std::span<const Complex> i_vec, std::span<const Complex> j_vec);

/// ||A^{1/2} B^{1/2}||
double cross_norm(const Effect& a, const Effect& b);

/// 1 + ||A^{1/2} B^{1/2}||
double pair_bound(const Effect& a, const Effect& b);

/// 1 + (sum over ordered pairs i != j of ||A_i^{1/2} A_j^{1/2}||^2)^{1/2}.
/// Each unordered pair contributes twice. Throws EmptyInput / DimMismatch.
double multi_bound(std::span<const Effect> effects);

/// 1 + sqrt(m (m - 1) / D): multi_bound for m rank-one projections taken from
/// m distinct bases of a MUB family in dimension D.
double mub_bound(std::size_t m, std::size_t dim);

/// (D + 1)/2 + (sqrt(D) + 1/sqrt(D))/2, the bound obtained by summing the
/// pairwise bounds over all D + 1 MUB picks. Throws BadDim for D < 2.
double trivial_combination_bound(std::size_t dim);

/// Unit vector spanning the range of a rank-one projection; throws NotRankOne.
Vector rank_one_vector(const Effect& p, double tol = kConstructionTol);

/// The arc-cosine relation for rank-one P, Q and a pure state, in two
/// readings. Each report is arranged as lhs <= rhs with
///   lhs = arccos|<i|j>|,
///   literal.rhs   = arccos p + arccos q,
///   amplitude.rhs = arccos sqrt(p) + arccos sqrt(q).
struct LpAngleReport {
  double p;
  double q;
  double overlap;  // |<i|j>|
  BoundReport literal;
  BoundReport amplitude;
};

LpAngleReport lp_angle_check(const Effect& p, const Effect& q, std::span<const Complex> psi);

/// Evaluates sum_i tr(rho A_i) against the bound selected by `kind`.
///   weak_lp_pair        two rank-one projections
///   pair_general        two effects
///   multi               one or more effects
///   mub                 rank-one projections, pairwise unbiased
///   trivial_combination D + 1 unbiased rank-one projections
///   lp_angle            two rank-one projections, pure rho (amplitude reading)
/// Throws BadOperands when the operands do not fit the kind.
BoundReport evaluate(BoundKind kind, std::span<const Effect> operands, const State& rho);

/// separability: lhs = sum_i M_inf(observables[i], rho) on a D^2-dimensional
/// rho, rhs = mub_bound(#observables, D).
BoundReport evaluate(BoundKind kind, std::span<const Povm> observables, const State& rho);

}  // namespace lp
