#ifndef TANAKA_FLAG_PROLONG_HPP
#define TANAKA_FLAG_PROLONG_HPP

#include <map>
#include <vector>

#include "tanaka/derivations.hpp"
#include "tanaka/flag_symbol.hpp"
#include "tanaka/graded.hpp"
#include "tanaka/prolong.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

/// Whether the degree -1 data of a flag symbol is the span of its matrices
/// (the unparameterized setting) or one fixed endomorphism whose higher
/// prolongation starts from the centralizer (the parameterized one).
enum class DeltaMode { Line, FixedElement };

/// A flag symbol: a flag on g^{-1} of the parent of a degree-zero ambient
/// algebra, together with a commutative space delta of degree -1
/// endomorphisms of the associated graded space, given as matrices in flat
/// graded coordinates of the flag. Construction computes the graded image
/// of the ambient algebra degree by degree (as matrices of pure degree in
/// the same coordinates) and validates that delta sits inside its degree -1
/// component (NotContained otherwise) and commutes (NotASubalgebra).
class FlagSymbol {
public:
  /// `delta` lists spanning matrices in flat graded coordinates; exactly
  /// one is required in FixedElement mode.
  FlagSymbol(FiltrationSpec flag, Subalgebra0 ambient, std::vector<Mat> delta,
             DeltaMode mode = DeltaMode::Line);

  const FiltrationSpec& flag() const { return flag_; }
  const Subalgebra0& ambient() const { return ambient_; }
  DeltaMode mode() const { return mode_; }

  /// Span of the vectorized delta matrices inside Q^(d1*d1), in flat graded
  /// coordinates.
  const Subspace& delta() const { return delta_span_; }
  const std::vector<Mat>& delta_matrices() const { return delta_mats_; }
  /// The fixed endomorphism; only available in FixedElement mode.
  const Mat& fixed_element() const;

  /// The graded model of the flag; its flatten matrix converts g^{-1}
  /// coordinates of the parent symbol into the flat graded coordinates all
  /// matrices here act on.
  const GradedRealization& realization() const { return real_; }

  /// Dimensions of the graded image of the ambient algebra, by degree.
  const GradedSpace& ambient_graded() const { return ambient_graded_; }
  /// Basis of the degree-k component of the graded ambient algebra, one
  /// vectorized pure-degree matrix per row (0 rows outside the range).
  Mat ambient_component(int k) const;

private:
  FiltrationSpec flag_;
  GradedRealization real_;
  Subalgebra0 ambient_;
  DeltaMode mode_;
  std::vector<Mat> delta_mats_;
  Subspace delta_span_;
  GradedSpace ambient_graded_;
  std::map<int, Mat> ambient_layers_;
};

/// The prolongation u^F of a flag symbol: one component per degree k >= -1,
/// each a space of vectorized pure-degree matrices in the flat graded
/// coordinates of the symbol's flag. Component -1 is the span of delta.
///
/// Degrees above the stored range are zero for a Terminated run; a Capped
/// run throws std::out_of_range there, mirroring ProlongedAlgebra.
class FlagProlongation {
public:
  FlagProlongation() = default;

  ProlongStatus status() const { return status_; }
  /// Largest degree with a nonzero component (>= -1 when delta is nonzero).
  int terminated_at() const { return terminated_at_; }
  /// Highest degree actually computed and stored.
  int max_degree() const { return max_degree_; }
  /// Size of the matrices; components live in Q^(n*n).
  int matrix_dim() const { return n_; }

  int dim(int k) const;
  /// Basis rows of the degree-k component, k in [-1, max_degree()].
  const Mat& component(int k) const { return comps_.at(k); }
  /// Sum of all stored component dimensions, delta included.
  int total_dim() const;

  /// Exhaustive bracket closure over stored basis pairs: commutators land
  /// in the component of the summed degree (zero when that degree is past a
  /// Terminated range; pairs beyond a Capped range are skipped).
  bool closed_under_brackets() const;

private:
  friend FlagProlongation flag_prolong(const FlagSymbol&, int);
  friend FlagProlongation flag_prolong_param(const FlagSymbol&, int);

  /// Finalize computed components: record the degree range and run the
  /// closure check both entry points promise.
  FlagProlongation(int n, ProlongStatus status, std::map<int, Mat> comps);

  int n_ = 0;
  ProlongStatus status_ = ProlongStatus::Terminated;
  int terminated_at_ = -1;
  int max_degree_ = -1;
  std::map<int, Mat> comps_;
};

/// Universal prolongation of the flag symbol: u_{-1} = span(delta) and
/// u_k = {X in degree k of the graded ambient : [X, Y] in u_{k-1} for all
/// Y in delta}, solved exactly degree by degree. Stops when two consecutive
/// components vanish or the graded ambient runs out of degrees (Terminated)
/// or at max_degree (Capped). The result is checked to be closed under
/// brackets before it is returned.
FlagProlongation flag_prolong(const FlagSymbol& sym, int max_degree = 20);

/// Parameterized variant for a fixed element: degree 0 is the centralizer
/// {X : [X, delta] = 0} and higher degrees recurse as in flag_prolong with
/// the parameterized components in place of u_{k-1}. Requires FixedElement
/// mode.
FlagProlongation flag_prolong_param(const FlagSymbol& sym, int max_degree = 20);

/// Two-step symbol with dim g^{-2} = 1 and [u, v] = omega(u, v) z on
/// g^{-1}, for an antisymmetric nondegenerate omega; the heisenberg algebra
/// presented in the coordinates omega is given in.
NilpotentSymbol heisenberg_from_pairing(const Mat& omega);

/// The flag symbol of a standard endomorphism datum over its canonical
/// flag, with the standard ambient for each shape:
///  - Line mode, no pairing: all of gl, over the commutative algebra;
///  - Line mode, pairing: the conformally symplectic algebra over the
///    heisenberg algebra of the pairing;
///  - FixedElement mode, pairing: the symplectic algebra over the
///    commutative algebra.
/// The datum's coordinates split its canonical flag, so its matrix and
/// pairing are already in flat graded coordinates.
FlagSymbol canonical_flag_symbol(const GradedEndomorphism& datum,
                                 DeltaMode mode = DeltaMode::Line);

/// The total span of a flag prolongation as a degree-zero subalgebra over
/// the parent of the symbol's ambient, ready for tanaka_prolong. Matrices
/// are carried back to the parent's g^{-1} coordinates through the flag
/// realization; throws NotASubalgebra when that transport loses dimensions
/// (the flag does not split compatibly).
Subalgebra0 to_subalgebra0(const FlagSymbol& sym, const FlagProlongation& u);

}  // namespace tanaka

#endif
