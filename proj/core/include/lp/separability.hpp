#pragma once

#include <cstdint>
#include <vector>

#include "lp/bounds.hpp"
#include "lp/mub.hpp"
#include "lp/quantum.hpp"

namespace lp {

/// D-outcome PVM on H_A (x) H_B built from one MUB basis:
///   Q_d = sum_s |s:i><s:i| (x) |conj(s+d):i><conj(s+d):i|,  d = 0..D-1,
/// with s + d taken mod D and conj the entrywise conjugate of the basis
/// vector. Q_0 collects the perfectly correlated outcomes.
struct CorrelationObservable {
  std::size_t dim;          // local dimension D
  std::size_t basis_index;  // i
  Pvm elements;             // on dimension D^2
};

enum class Verdict { entangled_detected, inconclusive };

const char* to_string(Verdict v) noexcept;

struct SeparabilityReport {
  std::size_t dim;
  std::vector<double> per_basis_m_inf;
  double lhs;  // sum of per_basis_m_inf
  double rhs;  // 1 + sqrt(D + 1) for a full family
  Verdict verdict;
  BoundReport bound;  // the same comparison as a separability BoundReport
};

std::vector<CorrelationObservable> correlation_observables(const MubFamily& f);

/// Separable states satisfy sum_i M_inf(Q^(i) : rho) <= 1 + sqrt(D + 1);
/// exceeding it by more than kCheckTol certifies entanglement.
SeparabilityReport separability_statistic(const State& rho, const MubFamily& f);
SeparabilityReport separability_statistic(const State& rho,
                                          const std::vector<CorrelationObservable>& observables);

/// (1/sqrt(D)) sum_k |k>|k> as a density operator.
State max_entangled_state(std::size_t dim);

State product_state(const State& a, const State& b);

/// sum_k w_k rho_A^(k) (x) rho_B^(k) with flat Dirichlet weights. Each factor
/// has rank `factor_rank`, or a uniformly random rank when it is 0.
State random_separable(std::size_t dim, std::size_t num_terms, std::uint64_t seed,
                       std::size_t factor_rank = 0);
State random_separable(std::size_t dim, std::size_t num_terms, Rng& rng,
                       std::size_t factor_rank = 0);

/// Reduced state on A (`keep_first`) or B of a state on D_A x D_B.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            bool keep_first);

}  // namespace lp
