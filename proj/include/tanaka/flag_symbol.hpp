#ifndef TANAKA_FLAG_SYMBOL_HPP
#define TANAKA_FLAG_SYMBOL_HPP

#include <optional>
#include <vector>

#include "tanaka/graded.hpp"
#include "tanaka/matrix.hpp"

namespace tanaka {

/// A degree -1 endomorphism of a finite graded vector space, the raw datum
/// behind a flag symbol. Coordinates are flat, ordered by increasing degree
/// (layers of `space` in map order), and the matrix lowers degree by one.
/// Symplectic representatives carry the pairing they were built with, on
/// the same coordinates.
struct GradedEndomorphism {
  GradedSpace space;
  Mat matrix;
  std::optional<Mat> pairing;

  int total_dim() const { return space.total_dim(); }
  /// First coordinate of the degree-d layer in flat coordinates.
  int offset(int d) const;
  /// The flag the grading splits: step(j) = span of all layers of degree
  /// >= j, as coordinate subspaces.
  FiltrationSpec canonical_flag() const;
};

/// Nilpotent shift on a string of lines in degrees r..p: sends the degree-i
/// line to the degree i-1 line for r < i <= p and the bottom line to zero.
/// Requires r <= p < 0. The line R*delta_{-n,-1} is the symbol of systems
/// of ODEs of pure order n (a single Jordan block of rank n-1).
GradedEndomorphism make_delta_rp(int r, int p);

/// Shift on the 2m-dimensional space L_m with one line in each degree
/// -m-1..m-2, killing the bottom line, together with the symplectic pairing
/// that makes the shift an element of sp: degree-i and degree-j lines pair
/// nontrivially only when i + j = -3, with alternating signs normalized so
/// that omega(tau(e), e) = 1 on the degree -1 line. `sign` = -1 returns the
/// negated shift with the same pairing (so that omega(tau(e), e) = -1),
/// the inequivalent representative used by parameterized sums.
GradedEndomorphism make_tau_m(int m, int sign = 1);

/// Block-diagonal sum: the graded space is the degree-wise direct sum (flat
/// coordinates in increasing degree, parts in order inside each degree) and
/// the endomorphisms act componentwise. Pairings concatenate when every
/// part carries one; throws MixedStructure when only some do. Requires a
/// nonempty part list.
GradedEndomorphism direct_sum(const std::vector<GradedEndomorphism>& parts);

/// Outcome of the symplectic-flag test: whether the skew-orthogonal
/// complement of each step is again a step at the reflected index, and the
/// reflection parity nu in {0, 1} when it is (index shifts change the raw
/// reflection constant by even amounts, so only its parity is invariant).
struct SymplecticFlagCheck {
  bool symplectic = false;
  int shift = 0;
  friend bool operator==(const SymplecticFlagCheck& a, const SymplecticFlagCheck& b) {
    return a.symplectic == b.symplectic && a.shift == b.shift;
  }
};

/// Decide whether a flag is symplectic for a nondegenerate antisymmetric
/// omega on its ambient space: there is a constant c with
/// step(j)^perp = step(c - j) for every j, the complement taken with
/// respect to omega. Returns the parity of -c as `shift`, preferring 0
/// when several constants work. Throws std::invalid_argument when omega
/// is not antisymmetric nondegenerate of the right size.
SymplecticFlagCheck symplectic_flag_check(const FiltrationSpec& flag, const Mat& omega);

/// Ambient families for which compatibility of a flag with the grading is
/// settled: the general and special linear algebras impose no condition,
/// the symplectic and conformally symplectic ones require a symplectic
/// flag, and anything else is left undecided rather than searched.
enum class AmbientFamily {
  GeneralLinear,
  SpecialLinear,
  Symplectic,
  ConformalSymplectic,
  Other,
};

enum class Compatibility { Compatible, Incompatible, Undecided };

/// Compatibility of a flag with the grading of the ambient family. The
/// symplectic cases need the form; passing them without one throws
/// std::invalid_argument.
Compatibility grading_compatibility(AmbientFamily family, const FiltrationSpec& flag,
                                    const std::optional<Mat>& omega = std::nullopt);

}  // namespace tanaka

#endif
