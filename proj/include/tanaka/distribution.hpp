#ifndef TANAKA_DISTRIBUTION_HPP
#define TANAKA_DISTRIBUTION_HPP

#include <string>
#include <vector>

#include "tanaka/nilpotent.hpp"
#include "tanaka/polynomial.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

/// Vector field sum_k components[k] d/dx_{k+1} on Q^n with polynomial
/// coefficients, one component per coordinate.
struct PolyVectorField {
  int n_coords;
  std::vector<Polynomial> components;

  /// Validates the component count and that every component uses n
  /// variables.
  PolyVectorField(int n, std::vector<Polynomial> comps);
  /// Components parsed from text, one polynomial per coordinate.
  static PolyVectorField parse(int n, const std::vector<std::string>& comps);

  Vec evaluate(const Vec& point) const;
  bool is_zero() const;

  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.n_coords == b.n_coords && a.components == b.components;
  }
};

/// Lie bracket of vector fields: [x, y]_k = sum_j (x_j d_j y_k - y_j d_j x_k),
/// exact polynomial arithmetic throughout.
PolyVectorField bracket(const PolyVectorField& x, const PolyVectorField& y);

/// A distribution presented by a spanning list of polynomial vector fields.
/// Linear independence of the spanning fields is a pointwise property and
/// is checked at every queried point, not here.
struct DistributionSpec {
  int n_coords;
  std::vector<PolyVectorField> fields;

  DistributionSpec(int n, std::vector<PolyVectorField> spanning);
};

inline constexpr int kDefaultDepthCap = 10;

/// Weak derived flag at a rational point: D^{-1}(p) within D^{-2}(p) within
/// ..., where D^{-j} = D^{-j+1} + [D, D^{-j+1}]. Stops at pointwise
/// stabilization, at the full tangent space, or after depth_cap steps,
/// whichever comes first; the stabilized repeat is not included. Throws
/// DependentAtPoint when the spanning fields are dependent at the point.
std::vector<Subspace> weak_derived_flag(const DistributionSpec& d, const Vec& point,
                                        int depth_cap = kDefaultDepthCap);

/// Tanaka symbol of the distribution at the point: the graded nilpotent
/// algebra on g^{-j} = D^{-j}(p)/D^{-j+1}(p) with brackets of representative
/// sections projected to the quotients. Quotient bases follow the
/// deterministic complement rule, so structure constants are reproducible.
///
/// The constancy hypothesis is probed, not proved: every sample point must
/// reproduce the dimension sequence of the weak derived flag at the point
/// (NonConstantRank otherwise), and section brackets must stay inside the
/// flag at the point (NonConstantRank as well, since that is the same
/// hypothesis failing). Throws DepthCapExceeded when the flag is still
/// growing at depth_cap, and DependentAtPoint as weak_derived_flag does.
NilpotentSymbol symbol_at(const DistributionSpec& d, const Vec& point,
                          const std::vector<Vec>& sample_points = {},
                          int depth_cap = kDefaultDepthCap);

}  // namespace tanaka

#endif
