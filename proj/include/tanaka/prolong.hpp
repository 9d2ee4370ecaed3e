#ifndef TANAKA_PROLONG_HPP
#define TANAKA_PROLONG_HPP

#include <vector>

#include "tanaka/derivations.hpp"
#include "tanaka/matrix.hpp"
#include "tanaka/nilpotent.hpp"

namespace tanaka {

/// How a prolongation run ended. Terminated means a component came out zero,
/// which forces all later ones to vanish (elements are determined by their
/// action on g^{-1}); Capped means the degree cap was hit with the last
/// component still nonzero, and nothing is claimed beyond the cap.
enum class ProlongStatus { Terminated, Capped };

/// A degree-k element of the prolongation (k >= 0), stored by its action on
/// the negative part: blocks[i-1] maps g^{-i} coordinates to coordinates of
/// the degree k-i component (layer coordinates of the symbol when k-i < 0,
/// basis coordinates of the computed component when k-i >= 0, empty when
/// k-i is below the depth).
struct Action {
  int degree = 0;
  std::vector<Mat> blocks;
};

/// Structural checks run on every computed prolongation.
struct ProlongVerification {
  bool jacobi = true;        // graded Jacobi identity over all basis triples
  bool determinacy = true;   // elements vanish iff their g^{-1} block does
  bool transitivity = true;  // no nonzero element of degree >= 0 kills g^{-1}
  bool termination_zero = true;  // one extra component past the stop recomputes
                                 // to zero (Terminated runs only)
  bool ok() const { return jacobi && determinacy && transitivity && termination_zero; }
};

/// The universal Tanaka prolongation u(m, g0) of a fundamental symbol m with
/// degree-zero part g0, computed degree by degree as kernels of the Leibniz
/// identity and stored with exact structure constants.
///
/// Degrees are uniform across the object: negative degrees address layers of
/// m, nonnegative ones the computed components. For a Capped run, queries
/// beyond the cap throw std::out_of_range rather than guessing.
class ProlongedAlgebra {
public:
  ProlongedAlgebra(NilpotentSymbol m, Subalgebra0 g0, int max_degree);

  const NilpotentSymbol& negative() const { return m_; }
  const Subalgebra0& zero() const { return g0_; }

  ProlongStatus status() const { return status_; }
  /// Largest degree with a nonzero component; -1 when even g^0 is zero.
  /// Only meaningful for Terminated runs.
  int terminated_at() const { return terminated_at_; }
  /// Highest degree actually computed and stored.
  int max_degree() const { return int(comps_.size()) - 1; }

  /// Dimension at any degree. Zero below -depth and, for Terminated runs,
  /// above the last computed degree; throws std::out_of_range above the cap
  /// of a Capped run.
  int dim(int degree) const;
  /// Sum of all stored dimensions (negative part plus computed components).
  int total_dim() const;
  /// Basis of the degree-k component, k in [0, max_degree()].
  const std::vector<Action>& component(int k) const { return comps_.at(k); }

  /// Bracket of coordinate vectors x in degree d1 and y in degree d2.
  /// Result is in degree d1+d2 coordinates; throws std::out_of_range when a
  /// Capped run cannot represent the result.
  Vec bracket(int d1, const Vec& x, int d2, const Vec& y) const;

  const ProlongVerification& verification() const { return verification_; }

private:
  Vec express_in_component(const Action& a) const;
  Action assemble_bracket(int k, int a, int l, int b) const;
  std::vector<Action> solve_component(int k) const;
  void build_positive_table();
  void verify();

  NilpotentSymbol m_;
  Subalgebra0 g0_;
  ProlongStatus status_ = ProlongStatus::Terminated;
  int terminated_at_ = -1;
  int cap_ = 0;
  std::vector<std::vector<Action>> comps_;
  // pos_table_[k][l][a][b] = coordinates of [e^k_a, e^l_b] in comp(k+l);
  // filled for every stored pair with k+l <= max_degree().
  std::vector<std::vector<std::vector<std::vector<Vec>>>> pos_table_;
  ProlongVerification verification_;
};

/// Compute u(m, g0) up to max_degree. Throws std::invalid_argument if g0 is
/// not attached to m or if m fails its own structural checks.
ProlongedAlgebra tanaka_prolong(const NilpotentSymbol& m, const Subalgebra0& g0,
                                int max_degree = 20);

}  // namespace tanaka

#endif
