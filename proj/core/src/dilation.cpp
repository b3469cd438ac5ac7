#include "lp/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lp/error.hpp"

namespace lp {

namespace {

struct EffectBlocks {
  ComplexMatrix a;           // spectrally clamped A
  ComplexMatrix complement;  // 1 - A
  ComplexMatrix coupling;    // sqrt(A (1 - A))
};

// All three blocks come from one eigendecomposition of A, so they commute
// exactly and A^2 + coupling^2 = A up to roundoff. Eigenvalues are clamped
// into [0, 1], and values within roundoff of an endpoint snap to it so that
// projections get no coupling block.
EffectBlocks blocks_of(const Effect& e) {
  const EigenDecomposition eig = hermitian_eig(e.op());
  const double snap = roundoff_window(1.0);
  auto unit = [snap](double v) {
    if (v <= snap) return 0.0;
    if (v >= 1.0 - snap) return 1.0;
    return v;
  };
  EffectBlocks b;
  b.a = eig.map_spectrum(unit);
  b.complement = eig.map_spectrum([&](double v) { return 1.0 - unit(v); });
  b.coupling = eig.map_spectrum([&](double v) {
    const double u = unit(v);
    return std::sqrt(u * (1.0 - u));
  });
  return b;
}

// Projection for one effect placed on blocks {0, k} of an n-block space.
ComplexMatrix block_projection(const EffectBlocks& b, std::size_t d, std::size_t k,
                               std::size_t n) {
  ComplexMatrix p(n * d, n * d);
  p.set_block(0, 0, b.a);
  p.set_block(0, k * d, b.coupling);
  p.set_block(k * d, 0, b.coupling);
  p.set_block(k * d, k * d, b.complement);
  return p;
}

void require_projection(const ComplexMatrix& p, std::size_t index) {
  if (!p.is_square()) throw Error(ErrorKind::NotSquare, "projection must be square");
  const double herm = hermiticity_residual(p);
  const double idem = idempotency_residual(p);
  if (herm > 1e-8 || idem > 1e-8) {
    throw Error(ErrorKind::NotProjection,
                "operator " + std::to_string(index) + ": ||P - P^dagger|| = " +
                    std::to_string(herm) + ", ||P^2 - P|| = " + std::to_string(idem),
                index);
  }
}

}  // namespace

Vector DilationResult::embed(std::span<const Complex> omega) const {
  if (omega.size() != d) {
    throw Error(ErrorKind::DimMismatch,
                "vector of dim " + std::to_string(omega.size()) + " vs " + std::to_string(d));
  }
  Vector psi(big_dim());
  std::copy(omega.begin(), omega.end(), psi.begin());
  return psi;
}

DilationResult dilate_pair(const Effect& a, const Effect& b) {
  const Effect pair[] = {a, b};
  const std::size_t d = common_dim(pair);
  DilationResult out{2, d, 3, {}};
  out.projections.push_back(block_projection(blocks_of(a), d, 1, 3));
  out.projections.push_back(block_projection(blocks_of(b), d, 2, 3));
  return out;
}

DilationResult dilate_multi(std::span<const Effect> effects) {
  const std::size_t d = common_dim(effects);
  const std::size_t m = effects.size();
  DilationResult out{m, d, m + 1, {}};
  out.projections.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.projections.push_back(block_projection(blocks_of(effects[k]), d, k + 1, m + 1));
  }
  return out;
}

double idempotency_residual(const ComplexMatrix& p) { return frobenius_norm(p * p - p); }

double hermiticity_residual(const ComplexMatrix& p) { return frobenius_norm(p - p.adjoint()); }

GramMatrix gram_matrix(std::span<const ComplexMatrix> projections, std::span<const Complex> psi) {
  const std::size_t m = projections.size();
  std::vector<Vector> images;
  GramMatrix out{ComplexMatrix(m, m), {}};
  images.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    Vector v = projections[j] * psi;
    const double n = norm(v);
    if (n <= kNullTol) {
      throw Error(ErrorKind::NullProjection,
                  "||P_" + std::to_string(j) + " psi|| = " + std::to_string(n), j);
    }
    for (auto& z : v) z /= n;
    images.push_back(std::move(v));
    out.source_norms.push_back(n);
  }
  for (std::size_t i = 0; i < m; ++i) {
    out.g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const Complex gij = inner(images[i], images[j]);
      out.g(i, j) = gij;
      out.g(j, i) = std::conj(gij);
    }
  }
  return out;
}

Lemma1Result lemma1_check(std::span<const ComplexMatrix> projections,
                          std::span<const Complex> psi, double tol) {
  Lemma1Result out{};
  std::vector<ComplexMatrix> kept;
  for (std::size_t j = 0; j < projections.size(); ++j) {
    require_projection(projections[j], j);
    out.sum_probs += expectation(projections[j], psi).real();
    if (norm(projections[j] * psi) <= kNullTol) {
      out.dropped.push_back(j);
    } else {
      kept.push_back(projections[j]);
    }
  }
  if (kept.empty()) {
    out.lambda = 0.0;
    out.frob_bound = 1.0;
  } else {
    const GramMatrix g = gram_matrix(kept, psi);
    out.lambda = max_eigenvalue(g.g);
    out.frob_bound = 1.0 + offdiag_frobenius(g.g);
  }
  out.holds = out.sum_probs <= out.lambda + tol;
  out.frob_holds = out.lambda <= out.frob_bound + tol;
  return out;
}

CrossOverlap cross_overlap_bound(const Effect& a, const Effect& b, std::span<const Complex> omega,
                                 double tol) {
  const ComplexMatrix ra = psd_sqrt(a.op());
  const ComplexMatrix rb = psd_sqrt(b.op());
  const double na = norm(ra * omega);
  const double nb = norm(rb * omega);
  if (na <= kNullTol || nb <= kNullTol) {
    throw Error(ErrorKind::NullVector, "||A^{1/2} Omega|| = " + std::to_string(na) +
                                           ", ||B^{1/2} Omega|| = " + std::to_string(nb));
  }
  const double overlap = std::abs(inner(omega, a.op() * (b.op() * omega))) / (na * nb);
  const double bound = operator_norm(ra * rb);
  return {overlap, bound, overlap <= bound + tol};
}

}  // namespace lp
