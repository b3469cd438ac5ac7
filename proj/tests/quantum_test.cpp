#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lp/error.hpp"
#include "lp/quantum.hpp"
#include "test_support.hpp"

namespace lp {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

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

Effect trine_effect(int k) {
  const double a = 2.0 * std::numbers::pi * k / 3.0;
  const Vector phi = {std::cos(a), std::sin(a)};
  return Effect((2.0 / 3.0) * ComplexMatrix::projector(phi));
}

TEST(Probability, IdentityEffectIsOne) {
  const State rho = random_density(4, 3, 5u);
  EXPECT_NEAR(probability(Effect(ComplexMatrix::identity(4)), rho), 1.0, 1e-12);
}

TEST(Probability, ComputationalOnPlus) {
  const State plus = State::pure(Vector{kInvSqrt2, kInvSqrt2});
  const Effect zero(ComplexMatrix::projector(Vector{1.0, 0.0}));
  EXPECT_NEAR(probability(zero, plus), 0.5, 1e-15);
}

TEST(Probability, TrineOnMaximallyMixed) {
  // tr((2/3)|phi><phi| * I/2) = 1/3 for any unit phi.
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(probability(trine_effect(k), State::maximally_mixed(2)), 1.0 / 3.0, 1e-15);
  }
}

TEST(Probability, DimMismatch) {
  EXPECT_EQ(kind_of([] { probability(Effect(ComplexMatrix::identity(2)), State::maximally_mixed(3)); }),
            ErrorKind::DimMismatch);
}

TEST(Probability, AffineInState) {
  Rng rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const State r1 = random_density(d, 1 + trial % d, rng);
    const State r2 = random_density(d, 1 + (trial / 2) % d, rng);
    const Effect a = random_effect(d, rng);
    const double w = unit(rng);
    const State mix(w * r1.rho() + (1.0 - w) * r2.rho());
    EXPECT_NEAR(probability(a, mix), w * probability(a, r1) + (1 - w) * probability(a, r2), 1e-12);
  }
}

TEST(Povm, ProbabilitiesSumToOne) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 6;
    const Pvm pvm = Pvm::from_basis(haar_random_unitary(d, rng));
    const State rho = random_density(d, 1 + trial % d, rng);
    double total = 0.0;
    for (const auto& e : pvm.effects()) total += probability(e, rho);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
  const Povm trine({trine_effect(0), trine_effect(1), trine_effect(2)});
  double total = 0.0;
  for (const auto& e : trine.effects()) total += probability(e, random_density(2, 2, 9u));
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(MInfinity, Examples) {
  const State zero = State::pure(Vector{1.0, 0.0});
  EXPECT_NEAR(m_infinity(Pvm::computational(2), zero), 1.0, 1e-15);
  for (std::size_t d : {2u, 3u, 5u}) {
    EXPECT_NEAR(m_infinity(Pvm::computational(d), State::maximally_mixed(d)), 1.0 / d, 1e-15);
  }
  const ComplexMatrix hadamard(2, 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
  EXPECT_NEAR(m_infinity(Pvm::from_basis(hadamard), zero), 0.5, 1e-15);
}

TEST(Validation, RejectsBadStatesAndPovms) {
  const double bad_trace[] = {0.5, 0.49};
  EXPECT_EQ(kind_of([&] { State{ComplexMatrix::diagonal(bad_trace)}; }), ErrorKind::InvalidState);
  const double negative[] = {1.00001, -0.00001};
  EXPECT_EQ(kind_of([&] { State{ComplexMatrix::diagonal(negative)}; }), ErrorKind::InvalidState);
  const double within[] = {1.0 + 5e-7, -5e-7};
  EXPECT_NO_THROW(State{ComplexMatrix::diagonal(within)});

  const double big[] = {1.1, 0.0};
  EXPECT_EQ(kind_of([&] { Effect{ComplexMatrix::diagonal(big)}; }), ErrorKind::InvalidEffect);
  EXPECT_EQ(kind_of([] { Effect{ComplexMatrix(2, 2, {0.5, 0.1, 0.0, 0.5})}; }),
            ErrorKind::InvalidEffect);

  const double half[] = {0.5, 0.5};
  const double less[] = {0.5, 0.499};
  EXPECT_EQ(kind_of([&] {
              Povm({Effect(ComplexMatrix::diagonal(half)), Effect(ComplexMatrix::diagonal(less))});
            }),
            ErrorKind::InvalidPovm);
  EXPECT_EQ(kind_of([] { Povm(std::vector<Effect>{}); }), ErrorKind::EmptyInput);
  // The halves form a POVM but not a PVM.
  EXPECT_NO_THROW(
      Povm({Effect(ComplexMatrix::diagonal(half)), Effect(ComplexMatrix::diagonal(half))}));
  EXPECT_EQ(kind_of([&] {
              Pvm({Effect(ComplexMatrix::diagonal(half)), Effect(ComplexMatrix::diagonal(half))});
            }),
            ErrorKind::InvalidPovm);
}

TEST(HaarRandomPure, DimOneAndDeterminism) {
  const State s = haar_random_pure(1, 99u);
  EXPECT_NEAR(std::abs(s.rho()(0, 0) - 1.0), 0.0, 1e-15);
  const State a = haar_random_pure(5, 1234u);
  const State b = haar_random_pure(5, 1234u);
  EXPECT_EQ(a.rho(), b.rho());
  EXPECT_NE(a.rho(), haar_random_pure(5, 1235u).rho());
}

TEST(HaarRandomPure, FirstMomentOnQubit) {
  double mean = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) mean += haar_random_pure(2, derive_seed(42, i)).rho()(0, 0).real();
  mean /= n;
  // Haar: <0|rho|0> is uniform on [0, 1]; standard error ~ 0.0029.
  EXPECT_NEAR(mean, 0.5, 0.02);
}

TEST(RandomDensity, RankPurityAndTrace) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const State pure = random_density(4, 1, seed);
    EXPECT_NEAR(pure.purity(), 1.0, 1e-9);
    const State full = random_density(2, 2, seed);
    const auto vals = testing::reference_eigenvalues(full.rho());
    EXPECT_GT(vals(0), 0.0);
    const State mid = random_density(5, 3, seed);
    EXPECT_NEAR(mid.rho().trace().real(), 1.0, 1e-12);
    const auto mvals = testing::reference_eigenvalues(mid.rho());
    EXPECT_NEAR(mvals(0), 0.0, 1e-12);
    EXPECT_NEAR(mvals(1), 0.0, 1e-12);
    EXPECT_GT(mvals(2), 1e-9);
  }
  EXPECT_EQ(kind_of([] { random_density(3, 0, 1u); }), ErrorKind::BadRank);
  EXPECT_EQ(kind_of([] { random_density(3, 4, 1u); }), ErrorKind::BadRank);
}

TEST(HaarRandomUnitary, IsUnitary) {
  Rng rng(3);
  for (std::size_t d = 1; d <= 8; ++d) {
    const ComplexMatrix u = haar_random_unitary(d, rng);
    EXPECT_LE(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(d)), 1e-13);
  }
}

TEST(MaxSumOracle, SinglePvmSumsToOne) {
  Rng rng(4);
  const Pvm pvm = Pvm::from_basis(haar_random_unitary(4, rng));
  EXPECT_NEAR(max_sum_oracle(pvm.effects()).value, 1.0, 1e-12);
}

TEST(MaxSumOracle, TwoRankOneProjections) {
  const std::vector<Effect> pq = {Effect(ComplexMatrix::projector(Vector{1.0, 0.0})),
                                  Effect(ComplexMatrix::projector(Vector{kInvSqrt2, kInvSqrt2}))};
  const OracleResult r = max_sum_oracle(pq);
  EXPECT_NEAR(r.value, 1.0 + kInvSqrt2, 1e-12);
  EXPECT_NEAR(probability(pq[0], r.maximizer) + probability(pq[1], r.maximizer), r.value, 1e-9);
}

TEST(MaxSumOracle, QubitMubPicks) {
  // (|0><0| + |+><+| + |+i><+i|) = (3 I + sx + sy + sz) / 2; closed form.
  const Complex i{0.0, 1.0};
  const std::vector<Effect> picks = {
      Effect(ComplexMatrix::projector(Vector{1.0, 0.0})),
      Effect(ComplexMatrix::projector(Vector{kInvSqrt2, kInvSqrt2})),
      Effect(ComplexMatrix::projector(Vector{kInvSqrt2, i * kInvSqrt2}))};
  ComplexMatrix total(2, 2);
  for (const auto& e : picks) total += e.op();
  const double closed = testing::max_eig_2x2(total(0, 0).real(), total(0, 1), total(1, 1).real());
  EXPECT_NEAR(closed, 2.3660254037844384, 1e-15);
  EXPECT_NEAR(max_sum_oracle(picks).value, closed, 1e-12);
}

TEST(MaxSumOracle, DominatesSampledStates) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + trial % 5;
    std::vector<Effect> effects;
    for (int k = 0; k < 1 + trial % 5; ++k) effects.push_back(random_effect(d, rng));
    const double top = max_sum_oracle(effects).value;
    const State rho = random_density(d, 1 + trial % d, rng);
    double s = 0.0;
    for (const auto& e : effects) s += probability(e, rho);
    EXPECT_LE(s, top + 1e-9);
  }
  EXPECT_EQ(kind_of([] { max_sum_oracle({}); }), ErrorKind::EmptyInput);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(77, 5), derive_seed(77, 5));
}

}  // namespace
}  // namespace lp
