#pragma once

#include <span>
#include <vector>

#include "lp/bounds.hpp"
#include "lp/linalg.hpp"
#include "lp/quantum.hpp"

namespace lp {

/// Norms at or below this are treated as P_j|psi> = 0.
inline constexpr double kNullTol = 1e-12;

/// Effects A_1..A_m on H represented as projections on H^{(+)(blocks)}.
/// Block 0 carries the original space; projection k lives on blocks {0, k}:
///
///   [ A_k             sqrt(A_k(1-A_k)) ]
///   [ sqrt(A_k(1-A_k))       1 - A_k   ]
///
/// A state |Omega> embeds as |Omega> (+) 0 (+) ... (+) 0, which preserves
/// every probability: <psi|P_k|psi> = <Omega|A_k|Omega>.
struct DilationResult {
  std::size_t m = 0;       // number of effects
  std::size_t d = 0;       // dimension of the original space
  std::size_t blocks = 0;  // direct summands of the enlarged space
  std::vector<ComplexMatrix> projections;

  std::size_t big_dim() const noexcept { return blocks * d; }
  /// |Omega> (+) 0 (+) ... (+) 0
  Vector embed(std::span<const Complex> omega) const;
};

/// Two effects on H (+) H (+) H; A pairs with block 1, B with block 2.
DilationResult dilate_pair(const Effect& a, const Effect& b);
/// m effects on m + 1 copies of H.
DilationResult dilate_multi(std::span<const Effect> effects);

/// ||P^2 - P||_F
double idempotency_residual(const ComplexMatrix& p);
/// ||P - P^dagger||_F
double hermiticity_residual(const ComplexMatrix& p);

/// G_ij = <psi|P_i P_j|psi> / (||P_i psi|| ||P_j psi||).
struct GramMatrix {
  ComplexMatrix g;
  std::vector<double> source_norms;  // ||P_i psi||
};

/// Throws NullProjection (with the offending index) when ||P_j psi|| <= kNullTol.
GramMatrix gram_matrix(std::span<const ComplexMatrix> projections, std::span<const Complex> psi);

struct Lemma1Result {
  double sum_probs;   // sum_i <psi|P_i|psi>
  double lambda;      // max eigenvalue of G
  double frob_bound;  // 1 + offdiag_frobenius(G)
  bool holds;         // sum_probs <= lambda + tol
  bool frob_holds;    // lambda <= frob_bound + tol
  std::vector<std::size_t> dropped;  // indices with P_j psi = 0
};

/// Checks sum_i <psi|P_i|psi> <= Lambda(psi) <= 1 + (sum_{i!=j}|G_ij|^2)^{1/2}.
/// Indices with a null projection are dropped (they contribute nothing to the
/// sum) and listed in `dropped`. Throws NotProjection for non-projections.
Lemma1Result lemma1_check(std::span<const ComplexMatrix> projections,
                          std::span<const Complex> psi, double tol = kCheckTol);

struct CrossOverlap {
  double overlap;     // |<Omega|AB|Omega>| / (||A^{1/2} Omega|| ||B^{1/2} Omega||)
  double norm_bound;  // ||A^{1/2} B^{1/2}||
  bool holds;
};

/// Throws NullVector when A^{1/2}|Omega> or B^{1/2}|Omega> vanishes.
CrossOverlap cross_overlap_bound(const Effect& a, const Effect& b, std::span<const Complex> omega,
                                 double tol = kCheckTol);

}  // namespace lp
