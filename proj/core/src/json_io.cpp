#include "lp/json_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include "lp/error.hpp"

namespace lp {

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("field \"") + key + "\": " + e.what());
  }
}

void check_kind(const Json& j, const char* expected) {
  if (j.is_object() && j.contains("kind")) {
    if (!j.at("kind").is_string() || j.at("kind").get<std::string>() != expected) {
      throw Error(ErrorKind::Parse, std::string("expected kind \"") + expected + "\"");
    }
  }
}

Json tagged(const ComplexMatrix& m, const char* kind) {
  Json j = to_json(m);
  j["kind"] = kind;
  return j;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  std::vector<double> re, im;
  re.reserve(m.entries().size());
  im.reserve(m.entries().size());
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = get_field<std::size_t>(j, "rows");
  const auto cols = get_field<std::size_t>(j, "cols");
  const auto re = get_field<std::vector<double>>(j, "re");
  const auto im = get_field<std::vector<double>>(j, "im");
  if (rows == 0 || cols == 0) throw Error(ErrorKind::Parse, "matrix dimensions must be positive");
  if (re.size() != rows * cols || im.size() != rows * cols) {
    throw Error(ErrorKind::Parse, "expected " + std::to_string(rows * cols) + " entries, got re=" +
                                      std::to_string(re.size()) + " im=" +
                                      std::to_string(im.size()));
  }
  std::vector<Complex> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = {re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(entries));
}

Json to_json(const State& s) { return tagged(s.rho(), "state"); }

State state_from_json(const Json& j, double tol) {
  check_kind(j, "state");
  return State(matrix_from_json(j), tol);
}

Json to_json(const Effect& e) { return tagged(e.op(), "effect"); }

Effect effect_from_json(const Json& j, double tol) {
  check_kind(j, "effect");
  return Effect(matrix_from_json(j), tol);
}

Json effects_to_json(std::span<const Effect> effects) {
  Json arr = Json::array();
  for (const auto& e : effects) arr.push_back(to_json(e));
  return Json{{"effects", arr}};
}

Json to_json(const Povm& p) {
  Json j = effects_to_json(p.effects());
  j["labels"] = p.labels();
  return j;
}

std::vector<Effect> effects_from_json(const Json& j, double tol) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("effects")) throw Error(ErrorKind::Parse, "missing field \"effects\"");
    arr = &j.at("effects");
  }
  if (!arr->is_array()) throw Error(ErrorKind::Parse, "effects must be an array");
  std::vector<Effect> out;
  for (const auto& e : *arr) out.push_back(effect_from_json(e, tol));
  return out;
}

Povm povm_from_json(const Json& j, double tol) {
  std::vector<std::string> labels;
  if (j.is_object() && j.contains("labels")) labels = get_field<std::vector<std::string>>(j, "labels");
  return Povm(effects_from_json(j, tol), std::move(labels), tol);
}

Json to_json(const BoundReport& r) {
  return Json{{"kind", to_string(r.kind)}, {"lhs", r.lhs},   {"rhs", r.rhs},
              {"slack", r.slack},          {"holds", r.holds}, {"inputs_digest", r.inputs_digest}};
}

Json to_json(const LpAngleReport& r) {
  return Json{{"p", r.p},
              {"q", r.q},
              {"overlap", r.overlap},
              {"literal", to_json(r.literal)},
              {"amplitude", to_json(r.amplitude)}};
}

Json to_json(const MubFamily& f) {
  Json bases = Json::array();
  for (const auto& b : f.bases) bases.push_back(to_json(b));
  return Json{{"dim", f.dim}, {"bases", bases}};
}

MubFamily mub_family_from_json(const Json& j) {
  MubFamily f{get_field<std::size_t>(j, "dim"), {}};
  const Json& bases = j.at("bases");
  if (!bases.is_array()) throw Error(ErrorKind::Parse, "bases must be an array");
  for (const auto& b : bases) {
    ComplexMatrix m = matrix_from_json(b);
    if (m.rows() != f.dim || m.cols() != f.dim) {
      throw Error(ErrorKind::Parse, "basis is not " + std::to_string(f.dim) + "x" +
                                        std::to_string(f.dim));
    }
    f.bases.push_back(std::move(m));
  }
  return f;
}

Json to_json(const DilationResult& d) {
  Json projections = Json::array();
  for (const auto& p : d.projections) projections.push_back(to_json(p));
  return Json{{"blocks", {{"m", d.m}, {"d", d.d}}},
              {"big_dim", d.big_dim()},
              {"projections", projections}};
}

Json to_json(const Lemma1Result& r) {
  return Json{{"sum_probs", r.sum_probs},   {"lambda", r.lambda},
              {"frob_bound", r.frob_bound}, {"holds", r.holds},
              {"frob_holds", r.frob_holds}, {"dropped", r.dropped}};
}

Json to_json(const SeparabilityReport& r) {
  return Json{{"dim", r.dim},
              {"per_basis_m_inf", r.per_basis_m_inf},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"verdict", to_string(r.verdict)}};
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string operand_digest(std::string_view tag, std::span<const ComplexMatrix> operands) {
  std::string canonical(tag);
  for (const auto& m : operands) {
    canonical.push_back('\n');
    canonical += to_json(m).dump();
  }
  return sha256_hex(canonical);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace lp
