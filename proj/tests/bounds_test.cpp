#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lp/bounds.hpp"
#include "lp/error.hpp"
#include "lp/mub.hpp"
#include "test_support.hpp"

namespace lp {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kPi = std::numbers::pi;

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no lp::Error thrown";
  return ErrorKind::Parse;
}

Effect proj(const Vector& v) { return Effect(ComplexMatrix::projector(v)); }

TEST(WeakLpPair, Examples) {
  const Vector zero = {1.0, 0.0}, one = {0.0, 1.0}, plus = {kInvSqrt2, kInvSqrt2};
  EXPECT_DOUBLE_EQ(weak_lp_pair_bound(zero, one), 1.0);
  EXPECT_DOUBLE_EQ(weak_lp_pair_bound(zero, zero), 2.0);
  EXPECT_NEAR(weak_lp_pair_bound(zero, plus), 1.7071067811865475, 1e-15);
  const Vector long_vec = {2.0, 0.0};
  EXPECT_EQ(kind_of([&] { weak_lp_pair_bound(long_vec, zero); }), ErrorKind::NotUnit);
}

TEST(PairBound, Examples) {
  const Vector zero = {1.0, 0.0}, one = {0.0, 1.0};
  EXPECT_NEAR(pair_bound(proj(zero), proj(zero)), 2.0, 1e-14);
  const std::vector<Effect> same = {proj(zero), proj(zero)};
  EXPECT_NEAR(max_sum_oracle(same).value, 2.0, 1e-14);
  EXPECT_NEAR(pair_bound(proj(zero), proj(one)), 1.0, 1e-15);

  const MubFamily f = mub_qubit();
  const std::size_t picks[] = {0, 1, 0};
  const auto ps = mub_projector_picks(f, picks);
  EXPECT_NEAR(pair_bound(ps[0], ps[1]), 1.0 + std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(pair_bound(ps[1], ps[2]), 1.0 + std::sqrt(0.5), 1e-12);
}

TEST(PairBound, EqualsProjectionProductNormOnProjections) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 6;
    const Effect p = random_projection(d, 1 + trial % (d - 1), rng);
    const Effect q = random_projection(d, 1 + (trial / 3) % (d - 1), rng);
    EXPECT_NEAR(pair_bound(p, q), 1.0 + testing::reference_operator_norm(p.op() * q.op()), 1e-10);
  }
}

TEST(MultiBound, FullPvmGivesOne) {
  Rng rng(102);
  for (std::size_t d = 2; d <= 6; ++d) {
    const Pvm pvm = Pvm::from_basis(haar_random_unitary(d, rng));
    EXPECT_NEAR(multi_bound(pvm.effects()), 1.0, 1e-9);
  }
  EXPECT_EQ(multi_bound(Pvm::computational(4).effects()), 1.0);
}

TEST(MultiBound, TwoEffectsAreWorseThanPairByRootTwo) {
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const Effect a = random_effect(d, rng), b = random_effect(d, rng);
    const std::vector<Effect> ab = {a, b};
    EXPECT_NEAR(multi_bound(ab) - pair_bound(a, b),
                (std::numbers::sqrt2 - 1.0) * cross_norm(a, b), 1e-9);
  }
}

TEST(MultiBound, MubPicks) {
  for (std::size_t d : {2u, 3u, 5u, 7u}) {
    const MubFamily f = mub_for_dim(d);
    const std::vector<std::size_t> picks(d + 1, 0);
    EXPECT_NEAR(multi_bound(mub_projector_picks(f, picks)), 1.0 + std::sqrt(d + 1.0), 1e-9);
  }
  EXPECT_EQ(kind_of([] { multi_bound({}); }), ErrorKind::EmptyInput);
}

TEST(MultiBound, RemovingOrthogonalEffectDoesNotIncrease) {
  Rng rng(104);
  for (int trial = 0; trial < 50; ++trial) {
    // Effects living on the first d-1 coordinates plus |d-1><d-1|, which has
    // zero cross norm with all of them.
    const std::size_t d = 3 + trial % 4;
    std::vector<Effect> effects;
    for (int k = 0; k < 3; ++k) {
      const Effect small = random_effect(d - 1, rng);
      ComplexMatrix big(d, d);
      big.set_block(0, 0, small.op());
      effects.emplace_back(big);
    }
    const double without = multi_bound(effects);
    Vector last(d);
    last[d - 1] = 1.0;
    effects.push_back(proj(last));
    EXPECT_LE(without, multi_bound(effects) + 1e-12);
    EXPECT_NEAR(without, multi_bound(effects), 1e-12);
  }
}

TEST(TrivialCombination, ClosedForms) {
  EXPECT_NEAR(trivial_combination_bound(2), 2.5606601717798213, 1e-15);
  EXPECT_NEAR(trivial_combination_bound(3), 3.1547005383792515, 1e-15);
  for (std::size_t d = 3; d <= 31; ++d) {
    if (!is_prime(d)) continue;
    EXPECT_LT(1.0 + std::sqrt(d + 1.0), trivial_combination_bound(d)) << d;
  }
  EXPECT_GT(1.0 + std::sqrt(3.0), trivial_combination_bound(2));
  EXPECT_EQ(kind_of([] { trivial_combination_bound(1); }), ErrorKind::BadDim);
}

TEST(RankOneReduction, PairBoundRecoversWeakRelationOnRankOne) {
  Rng rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const Vector i = haar_random_vector(d, rng), j = haar_random_vector(d, rng);
    EXPECT_NEAR(pair_bound(proj(i), proj(j)), weak_lp_pair_bound(i, j), 1e-12);
  }
}

TEST(LpAngle, EqualityCases) {
  const Vector zero = {1.0, 0.0}, one = {0.0, 1.0};
  const LpAngleReport same = lp_angle_check(proj(zero), proj(zero), zero);
  EXPECT_NEAR(same.amplitude.lhs, 0.0, 1e-7);
  EXPECT_NEAR(same.amplitude.rhs, 0.0, 1e-7);
  EXPECT_TRUE(same.amplitude.holds);

  const LpAngleReport orth = lp_angle_check(proj(zero), proj(one), zero);
  EXPECT_NEAR(orth.amplitude.lhs, kPi / 2, 1e-12);
  EXPECT_NEAR(orth.amplitude.rhs, kPi / 2, 1e-12);
  EXPECT_NEAR(orth.amplitude.slack, 0.0, 1e-12);
  EXPECT_TRUE(orth.amplitude.holds);
  EXPECT_TRUE(orth.literal.holds);
}

TEST(LpAngle, AmplitudeReadingNeverViolated) {
  Rng rng(106);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const Effect p = proj(haar_random_vector(d, rng));
    const Effect q = proj(haar_random_vector(d, rng));
    const LpAngleReport r = lp_angle_check(p, q, haar_random_vector(d, rng));
    EXPECT_TRUE(r.amplitude.holds) << r.amplitude.slack;
    // arccos p >= arccos sqrt(p), so the literal reading is never tighter.
    EXPECT_GE(r.literal.rhs, r.amplitude.rhs - 1e-12);
  }
}

TEST(LpAngle, RejectsHigherRank) {
  const Effect id(ComplexMatrix::identity(2));
  const Vector zero = {1.0, 0.0};
  EXPECT_EQ(kind_of([&] { lp_angle_check(id, proj(zero), zero); }), ErrorKind::NotRankOne);
}

TEST(Evaluate, OrthogonalPairHolds) {
  const Vector zero = {1.0, 0.0, 0.0}, one = {0.0, 1.0, 0.0};
  const std::vector<Effect> ops = {proj(zero), proj(one)};
  const BoundReport r = evaluate(BoundKind::pair_general, ops, random_density(3, 2, 4u));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.slack, 0.0);
  EXPECT_EQ(r.inputs_digest.size(), 64u);
}

TEST(Evaluate, QubitMubAtOracleMaximizer) {
  const MubFamily f = mub_qubit();
  const std::size_t picks[] = {0, 0, 0};
  const auto ops = mub_projector_picks(f, picks);
  const State best = max_sum_oracle(ops).maximizer;
  const BoundReport r = evaluate(BoundKind::multi, ops, best);
  EXPECT_NEAR(r.lhs, 2.3660254037844384, 1e-9);
  EXPECT_NEAR(r.rhs, 2.7320508075688772, 1e-9);
  EXPECT_TRUE(r.holds);
  const BoundReport m = evaluate(BoundKind::mub, ops, best);
  EXPECT_NEAR(m.rhs, r.rhs, 1e-12);
  const BoundReport t = evaluate(BoundKind::trivial_combination, ops, best);
  EXPECT_NEAR(t.rhs, 2.5606601717798213, 1e-12);
  EXPECT_TRUE(t.holds);
}

TEST(Evaluate, PairBoundIsTightForRankOne) {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const std::vector<Effect> ops = {proj(haar_random_vector(d, rng)),
                                     proj(haar_random_vector(d, rng))};
    const BoundReport r = evaluate(BoundKind::pair_general, ops, max_sum_oracle(ops).maximizer);
    EXPECT_NEAR(r.slack, 0.0, 1e-9);
    const BoundReport w = evaluate(BoundKind::weak_lp_pair, ops, max_sum_oracle(ops).maximizer);
    EXPECT_NEAR(w.slack, 0.0, 1e-9);
  }
}

TEST(Evaluate, RandomTriplesHold) {
  Rng rng(108);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const std::vector<Effect> ops = {random_effect(d, rng), random_effect(d, rng)};
    const State rho = random_density(d, 1 + trial % d, rng);
    EXPECT_TRUE(evaluate(BoundKind::pair_general, ops, rho).holds);
    EXPECT_TRUE(evaluate(BoundKind::multi, ops, rho).holds);
  }
}

TEST(Evaluate, OperandErrors) {
  const Vector zero = {1.0, 0.0};
  const std::vector<Effect> one = {proj(zero)};
  const State rho = State::maximally_mixed(2);
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::pair_general, one, rho); }), ErrorKind::BadOperands);
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::multi, one, State::maximally_mixed(3)); }),
            ErrorKind::DimMismatch);
  const std::vector<Effect> half = {Effect(0.5 * ComplexMatrix::identity(2)), proj(zero)};
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::weak_lp_pair, half, rho); }), ErrorKind::NotRankOne);
  const std::vector<Effect> biased = {proj(zero), proj(zero)};
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::mub, biased, rho); }), ErrorKind::NotUnbiased);
  const std::vector<Effect> angle = {proj(zero), proj(Vector{kInvSqrt2, kInvSqrt2})};
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::lp_angle, angle, rho); }), ErrorKind::NotPure);
  EXPECT_TRUE(evaluate(BoundKind::lp_angle, angle, State::pure(zero)).holds);
  EXPECT_EQ(kind_of([&] { evaluate(BoundKind::separability, angle, rho); }),
            ErrorKind::BadOperands);
}

TEST(Evaluate, DigestTracksOperands) {
  const Vector zero = {1.0, 0.0}, plus = {kInvSqrt2, kInvSqrt2};
  const std::vector<Effect> ops = {proj(zero), proj(plus)};
  const State rho = State::maximally_mixed(2);
  const auto a = evaluate(BoundKind::pair_general, ops, rho);
  const auto b = evaluate(BoundKind::pair_general, ops, rho);
  const auto c = evaluate(BoundKind::multi, ops, rho);
  const auto d = evaluate(BoundKind::pair_general, ops, State::pure(zero));
  EXPECT_EQ(a.inputs_digest, b.inputs_digest);
  EXPECT_NE(a.inputs_digest, c.inputs_digest);
  EXPECT_NE(a.inputs_digest, d.inputs_digest);
}

TEST(BoundKind, NamesRoundTrip) {
  for (auto k : {BoundKind::weak_lp_pair, BoundKind::pair_general, BoundKind::multi, BoundKind::mub,
                 BoundKind::trivial_combination, BoundKind::lp_angle, BoundKind::separability}) {
    EXPECT_EQ(bound_kind_from_string(to_string(k)), k);
  }
  EXPECT_FALSE(bound_kind_from_string("robertson").has_value());
}

TEST(MakeReport, SlackAndVerdict) {
  const BoundReport r = make_report(BoundKind::multi, 1.5, 1.5 - 5e-10, "x");
  EXPECT_TRUE(r.holds);
  EXPECT_DOUBLE_EQ(r.slack, (1.5 - 5e-10) - 1.5);
  EXPECT_FALSE(make_report(BoundKind::multi, 1.5, 1.5 - 2e-9, "x").holds);
}

}  // namespace
}  // namespace lp
