#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lp/linalg.hpp"

namespace lp {

/// Tolerance applied when validating user-supplied operators (JSON input
/// arrives with rounding).
inline constexpr double kConstructionTol = 1e-6;
/// Tolerance for internal consistency assertions.
inline constexpr double kAssertTol = 1e-9;

using Rng = std::mt19937_64;

/// Child seed for stream `stream` of a campaign seeded with `seed`. Results of
/// a campaign depend only on (seed, trial index), never on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Density operator. Stored Hermitian-symmetrized after validation.
class State {
 public:
  explicit State(const ComplexMatrix& rho, double tol = kConstructionTol);

  /// |psi><psi|; psi must be unit within tol and is renormalized exactly.
  static State pure(std::span<const Complex> psi, double tol = kConstructionTol);
  static State maximally_mixed(std::size_t dim);

  const ComplexMatrix& rho() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return rho_.rows(); }
  /// Unit vector when the state was constructed pure.
  const std::optional<Vector>& purity_hint() const noexcept { return hint_; }
  /// tr(rho^2)
  double purity() const;

 private:
  State() = default;
  ComplexMatrix rho_;
  std::optional<Vector> hint_;
};

/// Positive operator with 0 <= A <= 1.
class Effect {
 public:
  explicit Effect(const ComplexMatrix& op, double tol = kConstructionTol);

  const ComplexMatrix& op() const noexcept { return op_; }
  std::size_t dim() const noexcept { return op_.rows(); }

 private:
  ComplexMatrix op_;
};

class Povm {
 public:
  /// Empty labels are replaced by "0", "1", ...
  explicit Povm(std::vector<Effect> effects, std::vector<std::string> labels = {},
                double tol = kConstructionTol);

  const std::vector<Effect>& effects() const noexcept { return effects_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return effects_.front().dim(); }

 private:
  std::vector<Effect> effects_;
  std::vector<std::string> labels_;
};

/// Povm whose elements are mutually orthogonal projections.
class Pvm : public Povm {
 public:
  explicit Pvm(std::vector<Effect> effects, std::vector<std::string> labels = {},
               double tol = kConstructionTol);

  /// Rank-one PVM formed by the columns of a unitary.
  static Pvm from_basis(const ComplexMatrix& unitary);
  static Pvm computational(std::size_t dim);
};

/// tr(rho A), un-clamped. Throws DimMismatch.
double probability(const Effect& a, const State& rho);
/// Reporting view of a probability: clamped into [0, 1].
double clamp_probability(double p) noexcept;
/// max_i tr(rho P_i). Throws DimMismatch.
double m_infinity(const Povm& p, const State& rho);

Vector haar_random_vector(std::size_t dim, Rng& rng);
State haar_random_pure(std::size_t dim, std::uint64_t seed);
/// Reduced state of a Haar pure state on dim x rank; throws BadRank unless
/// 1 <= rank <= dim.
State random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
State random_density(std::size_t dim, std::size_t rank, Rng& rng);
ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng);
/// U diag(u_k) U^dagger with u_k uniform on [0, 1] and U Haar.
Effect random_effect(std::size_t dim, Rng& rng);
/// Haar-random projection of the given rank.
Effect random_projection(std::size_t dim, std::size_t rank, Rng& rng);

struct OracleResult {
  double value;
  State maximizer;
};

/// max over states of sum_i tr(rho A_i): the top eigenvalue of sum_i A_i,
/// attained on its eigenvector. Throws EmptyInput / DimMismatch.
OracleResult max_sum_oracle(std::span<const Effect> effects);

/// Shared dimension of a nonempty effect list; throws EmptyInput / DimMismatch.
std::size_t common_dim(std::span<const Effect> effects);

}  // namespace lp
