#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "lp/error.hpp"
#include "lp/json_io.hpp"

namespace lp {
namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    state_from_json(Json::parse(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotSquare;  // sentinel: nothing thrown
}

TEST(MatrixJson, RoundTripIsExact) {
  Rng rng(401);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 7;
    const State s = random_density(d, 1 + trial % d, rng);
    const Json j = to_json(s);
    EXPECT_EQ(j.at("kind"), "state");
    EXPECT_EQ(state_from_json(Json::parse(j.dump())).rho(), s.rho());
    const Effect e = random_effect(d, rng);
    EXPECT_EQ(effect_from_json(Json::parse(to_json(e).dump())).op(), e.op());
  }
}

TEST(MatrixJson, Layout) {
  const ComplexMatrix m(1, 2, {Complex(1, 2), Complex(3, -4)});
  const Json j = to_json(m);
  EXPECT_EQ(j.at("rows"), 1);
  EXPECT_EQ(j.at("cols"), 2);
  EXPECT_EQ(j.at("re"), Json({1.0, 3.0}));
  EXPECT_EQ(j.at("im"), Json({2.0, -4.0}));
}

TEST(MatrixJson, ParseErrors) {
  EXPECT_EQ(parse_kind(R"({"rows": 1, "cols": 1, "re": [1]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"rows": 2, "cols": 2, "re": [1, 0, 0], "im": [0, 0, 0]})"),
            ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"rows": "x", "cols": 1, "re": [1], "im": [0]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"kind": "effect", "rows": 1, "cols": 1, "re": [1], "im": [0]})"),
            ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"rows": 1, "cols": 1, "re": [1], "im": [0]})"), ErrorKind::NotSquare);
  // Well formed but not a state.
  EXPECT_EQ(parse_kind(R"({"rows": 1, "cols": 1, "re": [2], "im": [0]})"), ErrorKind::InvalidState);
}

TEST(PovmJson, RoundTripKeepsLabels) {
  const Pvm pvm = Pvm::computational(3);
  const Povm back = povm_from_json(Json::parse(to_json(pvm).dump()));
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back.labels(), pvm.labels());
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.effects()[k].op(), pvm.effects()[k].op());
}

TEST(PovmJson, EffectsAcceptBareArray) {
  Rng rng(402);
  const std::vector<Effect> es = {random_effect(2, rng), random_effect(2, rng)};
  const Json obj = effects_to_json(es);
  EXPECT_EQ(effects_from_json(obj).size(), 2u);
  EXPECT_EQ(effects_from_json(obj.at("effects")).size(), 2u);
  // Not complete, so not a POVM.
  EXPECT_THROW(povm_from_json(obj), Error);
}

TEST(MubJson, RoundTrip) {
  const MubFamily f = mub_for_dim(3);
  const MubFamily back = mub_family_from_json(Json::parse(to_json(f).dump()));
  EXPECT_EQ(back.dim, 3u);
  ASSERT_EQ(back.bases.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(back.bases[i], f.bases[i]);
}

TEST(ReportJson, BoundReportFields) {
  const Effect a(ComplexMatrix::projector(Vector{1.0, 0.0}));
  const Effect es[] = {a, a};
  const BoundReport r = evaluate(BoundKind::pair_general, es, State::maximally_mixed(2));
  const Json j = to_json(r);
  for (const char* key : {"kind", "lhs", "rhs", "slack", "holds", "inputs_digest"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("kind"), "pair_general");
  EXPECT_EQ(j.at("inputs_digest").get<std::string>().size(), 64u);
}

TEST(ReportJson, SeparabilityFields) {
  const Json j = to_json(separability_statistic(max_entangled_state(2), mub_qubit()));
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("verdict"), "entangled_detected");
  EXPECT_EQ(j.at("per_basis_m_inf").size(), 3u);
}

TEST(Digest, KnownVectorsAndSensitivity) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  const ComplexMatrix a = ComplexMatrix::identity(2);
  const ComplexMatrix b = 0.5 * ComplexMatrix::identity(2);
  const ComplexMatrix ab[] = {a, b};
  const ComplexMatrix ba[] = {b, a};
  EXPECT_EQ(operand_digest("t", ab), operand_digest("t", ab));
  EXPECT_NE(operand_digest("t", ab), operand_digest("t", ba));
  EXPECT_NE(operand_digest("t", ab), operand_digest("u", ab));
}

TEST(ReadJsonFile, MissingAndMalformed) {
  try {
    read_json_file("/nonexistent/path.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  const std::string path = ::testing::TempDir() + "lp_bad.json";
  std::ofstream(path) << "{\"rows\": ";
  EXPECT_THROW(read_json_file(path), Error);
  std::ofstream(path) << "[1, 2]";
  EXPECT_EQ(read_json_file(path), Json({1, 2}));
  std::remove(path.c_str());
}

}  // namespace
}  // namespace lp
