#ifndef TANAKA_SUBSPACE_HPP
#define TANAKA_SUBSPACE_HPP

#include <optional>

#include "tanaka/errors.hpp"
#include "tanaka/matrix.hpp"

namespace tanaka {

/// Linear subspace of Q^n held in canonical form: the basis is the reduced
/// row echelon form of any spanning set, so two Subspace values are equal
/// exactly when they are the same subspace. Every operation returns
/// canonical output, which is what makes results reproducible run to run.
class Subspace {
public:
  /// The zero subspace of Q^n.
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(const Mat& rows);
  static Subspace span(const std::vector<Vec>& rows, int ambient);
  static Subspace zero(int ambient) { return Subspace(ambient); }
  static Subspace full(int ambient) { return Subspace::span(Mat::identity(ambient)); }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Canonical (RREF) basis, one vector per row.
  const Mat& basis() const { return basis_; }
  Vec basis_vector(int i) const { return basis_.row(i); }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& s) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  /// Coordinates of v in the canonical basis, or nullopt if v is outside.
  std::optional<Vec> coordinates_of(const Vec& v) const;

  /// Rows F with this = ker F; membership is then the linear test F*v = 0.
  /// Used to turn "lies in this subspace" into rows of a larger solve.
  Mat defining_equations() const;

private:
  int ambient_;
  Mat basis_;
  std::vector<int> pivots_;
};

/// Canonical basis of {x : a*x = 0} as a Subspace of Q^cols.
Subspace kernel(const Mat& a);

/// Row space of a.
Subspace row_space(const Mat& a);

/// Span of the columns of a.
Subspace col_space(const Mat& a);

/// Deterministic complement of `sub` inside `ambient` (throws NotContained).
///
/// Rule: write sub in coordinates of ambient's canonical basis, take the
/// non-pivot columns of that coordinate matrix's RREF, and lift the standard
/// coordinate vectors at those positions back through ambient's basis.
Subspace complement_in(const Subspace& sub, const Subspace& ambient);

/// Solution of a*x = b.
struct AffineSolution {
  bool solvable;
  Vec particular;     // empty when unsolvable
  Subspace homogeneous;  // kernel of a
};

AffineSolution solve_affine(const Mat& a, const Vec& b);

}  // namespace tanaka

#endif
