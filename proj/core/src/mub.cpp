#include "lp/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lp/error.hpp"

namespace lp {

bool is_prime(std::size_t n) noexcept {
  if (n < 2) return false;
  for (std::size_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

MubFamily mub_qubit() {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  MubFamily f{2, {}};
  f.bases.push_back(ComplexMatrix::identity(2));
  f.bases.push_back(ComplexMatrix(2, 2, {h, h, h, -h}));
  f.bases.push_back(ComplexMatrix(2, 2, {h, h, i * h, -i * h}));
  return f;
}

MubFamily mub_odd_prime(std::size_t p) {
  if (p == 2 || !is_prime(p)) {
    throw Error(ErrorKind::NotOddPrime, std::to_string(p) + " is not an odd prime");
  }
  MubFamily f{p, {}};
  f.bases.reserve(p + 1);
  f.bases.push_back(ComplexMatrix::identity(p));
  const double amp = 1.0 / std::sqrt(static_cast<double>(p));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  for (std::size_t j = 0; j < p; ++j) {
    ComplexMatrix basis(p, p);
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t t = 0; t < p; ++t) {
        // Exponent reduced mod p in integers so the phase is exact up to one
        // rounding of the angle.
        const std::size_t e = (j * ((k * k) % p) + t * k) % p;
        basis(k, t) = std::polar(amp, step * static_cast<double>(e));
      }
    f.bases.push_back(std::move(basis));
  }
  return f;
}

MubFamily mub_for_dim(std::size_t dim) { return dim == 2 ? mub_qubit() : mub_odd_prime(dim); }

double verify_mub(const MubFamily& f) {
  const double target = 1.0 / std::sqrt(static_cast<double>(f.dim));
  double worst = 0.0;
  for (std::size_t a = 0; a < f.bases.size(); ++a)
    for (std::size_t b = a + 1; b < f.bases.size(); ++b) {
      const ComplexMatrix overlaps = f.bases[a].adjoint() * f.bases[b];
      for (const auto& z : overlaps.entries()) worst = std::max(worst, std::abs(std::abs(z) - target));
    }
  return worst;
}

double unitarity_residual(const MubFamily& f) {
  double worst = 0.0;
  for (const auto& u : f.bases) {
    worst = std::max(worst, max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols())));
  }
  return worst;
}

std::vector<Effect> mub_projector_picks(const MubFamily& f, std::span<const std::size_t> picks) {
  if (picks.size() != f.bases.size()) {
    throw Error(ErrorKind::IndexOutOfRange, std::to_string(picks.size()) + " picks for " +
                                                std::to_string(f.bases.size()) + " bases");
  }
  std::vector<Effect> out;
  out.reserve(picks.size());
  for (std::size_t i = 0; i < picks.size(); ++i) {
    if (picks[i] >= f.bases[i].cols()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "pick " + std::to_string(picks[i]) + " in basis " + std::to_string(i), i);
    }
    out.emplace_back(ComplexMatrix::projector(f.bases[i].column(picks[i])));
  }
  return out;
}

}  // namespace lp
