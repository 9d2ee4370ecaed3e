#ifndef TANAKA_SPENCER_HPP
#define TANAKA_SPENCER_HPP

#include <vector>

#include "tanaka/matrix.hpp"
#include "tanaka/prolong.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

/// Exact matrix of the graded generalized Spencer operator of degree k.
///
/// Domain summands, in order: Hom(g^{-i}, g^{k+1-i}) for i = 1..depth, then
/// Hom(g^i, g^k) for i = 0..k-1. Target summands: Hom(g^{-1} (x) g^{-i},
/// g^{k-i}) for i = 2..depth, then Hom(g^{-1} /\ g^{-1}, g^{k-1}), then
/// Hom(g^{-1} (x) g^i, g^{k-1}) for i = 0..k-1. Every Hom block is
/// vectorized row major (target coordinate first), and tensor/wedge pair
/// indices run with the g^{-1} factor outer; wedge pairs are (a, b), a < b.
///
/// The negative-summand layout coincides with the coordinate layout of the
/// degree k+1 prolongation component, so kernels compare directly.
struct SpencerMap {
  int degree = 0;
  std::vector<int> domain_dims;
  std::vector<int> target_dims;
  Mat matrix;

  int domain_dim() const;
  int target_dim() const;
};

/// Build gr del_k for the prolongation u, whose components g^0..g^k must be
/// available (throws std::out_of_range past the cap of a Capped run).
/// The operator sends f to
///   (v1, v2) -> [f(v1), v2] + [v1, f(v2)] - f([v1, v2])   (v2 negative)
///   (v1, v2) -> [v1, f(v2)]                               (v2 in g^i, i >= 0)
/// with v1 in g^{-1} and brackets taken in u.
SpencerMap spencer_gr(const ProlongedAlgebra& u, int k);

/// Deterministic complement of the image of s in its target space, using
/// the pivot rule of complement_in. dim(result) + rank(s.matrix) equals the
/// target dimension.
Subspace normalization_complement(const SpencerMap& s);

}  // namespace tanaka

#endif
