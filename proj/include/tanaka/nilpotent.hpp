#ifndef TANAKA_NILPOTENT_HPP
#define TANAKA_NILPOTENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "tanaka/errors.hpp"
#include "tanaka/matrix.hpp"

namespace tanaka {

/// Outcome of the structural checks on a symbol. Antisymmetry and grading
/// are enforced by construction; these report the properties that need an
/// actual computation.
struct SymbolChecks {
  bool jacobi;
  bool graded;       // always true for table-backed symbols; kept for reports
  bool fundamental;  // each deeper layer is spanned by brackets with the top
  bool ok() const { return jacobi && graded && fundamental; }
};

/// Graded nilpotent Lie algebra on degrees -depth..-1, presented by
/// structure constants. Basis vectors are addressed as (degree, index).
///
/// The bracket table is stored densely per degree pair; antisymmetry is
/// normalized at construction and inconsistent input is rejected there.
class NilpotentSymbol {
public:
  /// One declared bracket [ (i,a), (j,b) ] = value, value in g^{i+j} coords.
  struct BracketEntry {
    int i, a, j, b;
    Vec value;
  };

  /// dims[k] = dim of degree -(k+1); so dims.front() is the top layer g^-1.
  NilpotentSymbol(std::vector<int> dims, const std::vector<BracketEntry>& entries);

  int depth() const { return int(dims_.size()); }
  /// Dimension of the component at `degree`; 0 outside [-depth, -1].
  int dim(int degree) const;
  int total_dim() const;
  const std::vector<int>& layer_dims() const { return dims_; }

  /// Structure constants: coordinates of [ (i,a), (j,b) ] in g^{i+j}.
  /// Returns the zero vector of the right size when i+j is below -depth.
  const Vec& bracket(int i, int a, int j, int b) const;

  /// Bilinear extension to coordinate vectors x in g^i, y in g^j.
  Vec bracket_vectors(int i, const Vec& x, int j, const Vec& y) const;

  SymbolChecks validate() const;

  /// Human-readable basis names, one list per layer starting at degree -1.
  /// Builders fill these (generator names, Lyndon words); presentation
  /// only, not part of equality. Falls back to "g{degree}[{index}]".
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  void set_labels(std::vector<std::vector<std::string>> labels);
  std::string label(int degree, int index) const;

  /// Symplectic-type pairing attached by some builders (heisenberg):
  /// omega(u, v) = coefficient of the deepest layer generator in [u, v].
  std::optional<Mat> pairing() const;

  friend bool operator==(const NilpotentSymbol& a, const NilpotentSymbol& b) {
    return a.dims_ == b.dims_ && a.table_ == b.table_;
  }

private:
  std::vector<int> dims_;
  // table_[i-1][j-1][a][b] = bracket value, zero-sized layers included.
  std::vector<std::vector<std::vector<std::vector<Vec>>>> table_;
  std::vector<std::vector<std::string>> labels_;
};

/// The commutative algebra Q^n concentrated in degree -1.
NilpotentSymbol build_commutative(int n);

/// Heisenberg algebra of odd total dimension 2k+1: basis x_1..x_k, y_1..y_k
/// in degree -1 and z in degree -2 with [x_a, y_a] = z. Throws EvenDim.
NilpotentSymbol build_heisenberg(int total_dim);

/// Free nilpotent algebra on l generators, truncated below degree -mu.
/// Basis: standard bracketings of Lyndon words over l letters, per length.
NilpotentSymbol build_free_nilpotent(int l, int mu);

/// Cumulative dimensions (d1, d1+d2, ..., total).
std::vector<int> growth_vector(const NilpotentSymbol& m);

/// Number of Lyndon words of length k over l letters (necklace/Witt count).
long witt_dimension(int l, int k);

}  // namespace tanaka

#endif
