#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lp/bounds.hpp"
#include "lp/dilation.hpp"
#include "lp/linalg.hpp"
#include "lp/mub.hpp"
#include "lp/quantum.hpp"
#include "lp/separability.hpp"

namespace lp {

using Json = nlohmann::json;

// Matrix format: {"rows", "cols", "re": [row-major], "im": [row-major]}.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// State / effect: the matrix format plus "kind": "state" | "effect". A
// missing kind is accepted on input; a wrong one is a Parse error.
Json to_json(const State& s);
State state_from_json(const Json& j, double tol = kConstructionTol);
Json to_json(const Effect& e);
Effect effect_from_json(const Json& j, double tol = kConstructionTol);

// POVM: {"effects": [effect, ...], "labels": [...]}.
Json to_json(const Povm& p);
Povm povm_from_json(const Json& j, double tol = kConstructionTol);
/// Effect tuple without the completeness requirement. Accepts the POVM
/// object layout or a bare array of effects.
std::vector<Effect> effects_from_json(const Json& j, double tol = kConstructionTol);
Json effects_to_json(std::span<const Effect> effects);

Json to_json(const BoundReport& r);
Json to_json(const LpAngleReport& r);
// {"dim", "bases": [matrix, ...]}
Json to_json(const MubFamily& f);
MubFamily mub_family_from_json(const Json& j);
// {"blocks": {"m", "d"}, "big_dim", "projections": [matrix, ...]}
Json to_json(const DilationResult& d);
Json to_json(const Lemma1Result& r);
// {"dim", "per_basis_m_inf", "lhs", "rhs", "verdict"}
Json to_json(const SeparabilityReport& r);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
/// Digest of a tagged operand list: the tag followed by the compact JSON dump
/// of each matrix, newline separated.
std::string operand_digest(std::string_view tag, std::span<const ComplexMatrix> operands);

/// Reads and parses a JSON file; throws Parse on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace lp
