#ifndef TANAKA_DERIVATIONS_HPP
#define TANAKA_DERIVATIONS_HPP

#include <vector>

#include "tanaka/errors.hpp"
#include "tanaka/matrix.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

/// A graded subalgebra g0 of the degree-zero derivations of a nilpotent
/// symbol m. This is the degree-zero seed of a Tanaka prolongation.
///
/// An element is a degree-preserving linear map D of m satisfying
/// D[u, v] = [Du, v] + [u, Dv]; it is stored as one square block per layer,
/// block(t, i) acting on g^{-i} in coordinates. Construction verifies the
/// derivation property and grading shape of every basis element, closure of
/// the span under commutators (NotASubalgebra otherwise), and that elements
/// are determined by their block on g^{-1}, which holds whenever m is
/// fundamental. Structure constants in the given basis are precomputed.
class Subalgebra0 {
public:
  Subalgebra0(NilpotentSymbol parent, std::vector<std::vector<Mat>> elements);

  const NilpotentSymbol& parent() const { return parent_; }
  int dim() const { return int(elements_.size()); }

  /// All layer blocks of basis element t; entry i-1 acts on g^{-i}.
  const std::vector<Mat>& element_blocks(int t) const { return elements_.at(t); }
  /// The g^{-1} block of basis element t.
  const Mat& block(int t, int i) const { return elements_.at(t).at(i - 1); }
  const Mat& action_on_top(int t) const { return elements_.at(t).front(); }

  /// Coordinates of [e_s, e_t] in this basis.
  const Vec& structure_constant(int s, int t) const { return struct_.at(s).at(t); }

  /// Apply the element with coefficient vector `coeffs` to x in g^{degree}
  /// (degree in [-depth, -1]).
  Vec apply(const Vec& coeffs, int degree, const Vec& x) const;

  /// Span of the vectorized g^{-1} blocks inside Q^(d1*d1).
  const Subspace& span_on_gminus1() const { return top_span_; }

private:
  NilpotentSymbol parent_;
  std::vector<std::vector<Mat>> elements_;
  std::vector<std::vector<Vec>> struct_;
  Subspace top_span_;
};

/// The full algebra of degree-zero derivations of m, with canonical basis.
Subalgebra0 derivations0(const NilpotentSymbol& m);

/// Degree-zero derivations whose g^{-1} block A satisfies A^T omega +
/// omega A = lambda omega for some scalar lambda (conformally symplectic).
/// omega must be antisymmetric of size dim g^{-1}.
Subalgebra0 restrict_to_csp(const NilpotentSymbol& m, const Mat& omega);

/// Same with lambda = 0 (symplectic).
Subalgebra0 restrict_to_sp(const NilpotentSymbol& m, const Mat& omega);

/// Degree-zero derivations whose g^{-1} block lies in the span of the given
/// matrices. Throws NotASubalgebra if the result is not closed under
/// commutators.
Subalgebra0 restrict_to_custom(const NilpotentSymbol& m,
                               const std::vector<Mat>& basis_on_top);

}  // namespace tanaka

#endif
