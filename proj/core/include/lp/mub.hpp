#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lp/linalg.hpp"
#include "lp/quantum.hpp"

namespace lp {

/// Mutually unbiased bases in dimension `dim`; column j of bases[i] is the
/// basis vector |j:i>.
struct MubFamily {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> bases;
};

bool is_prime(std::size_t n) noexcept;

/// The three Pauli eigenbases (Z, X, Y).
MubFamily mub_qubit();

/// p + 1 bases for an odd prime p: the computational basis, then for
/// j = 0..p-1 the basis with components omega^{j k^2 + t k} / sqrt(p),
/// omega = exp(2 pi i / p), row k, column t. Throws NotOddPrime.
MubFamily mub_odd_prime(std::size_t p);

/// mub_qubit for 2, mub_odd_prime otherwise.
MubFamily mub_for_dim(std::size_t dim);

/// max over distinct bases and all vector pairs of | |<s:j|t:i>| - 1/sqrt(D) |.
double verify_mub(const MubFamily& f);

/// max over bases of max |U^dagger U - 1|.
double unitarity_residual(const MubFamily& f);

/// |picks[i]:i><picks[i]:i| for each basis i. Throws IndexOutOfRange.
std::vector<Effect> mub_projector_picks(const MubFamily& f, std::span<const std::size_t> picks);

}  // namespace lp
