#ifndef TANAKA_GRADED_HPP
#define TANAKA_GRADED_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tanaka/errors.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {

/// Dimensions of a finite graded vector space, keyed by integer degree.
/// Only nonzero components are stored. Labels are optional basis names
/// used when results are written out; they do not affect equality.
struct GradedSpace {
  std::map<int, int> components;
  std::map<int, std::vector<std::string>> labels;

  int dim(int degree) const {
    auto it = components.find(degree);
    return it == components.end() ? 0 : it->second;
  }
  int total_dim() const {
    int t = 0;
    for (const auto& [d, n] : components) t += n;
    return t;
  }
  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.components == b.components;
  }
};

/// Decreasing filtration of Q^n by index j: step(j) ⊇ step(j+1), equal to
/// the full space for all j below lo() and to zero for all j above hi().
/// Construction normalizes to that form, so lo() is the first degree whose
/// graded piece step(lo)/step(lo+1) is nonzero and hi() the last.
class FiltrationSpec {
public:
  /// Steps as (index, subspace) pairs with strictly increasing indices and
  /// decreasing subspaces. An empty list means the trivial filtration with
  /// its single jump at index 0.
  FiltrationSpec(int ambient_dim, std::vector<std::pair<int, Subspace>> steps);

  /// Full space at index 0, zero above: one graded piece in degree 0.
  static FiltrationSpec trivial(int ambient_dim);
  /// Complete flag of Q^n: step(j) = span(e_1..e_{n-j}), degrees 0..n-1.
  static FiltrationSpec complete_flag(int n);

  int ambient_dim() const { return ambient_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const Subspace& step(int j) const;
  int gr_dim(int j) const { return step(j).dim() - step(j + 1).dim(); }
  GradedSpace graded() const;

  friend bool operator==(const FiltrationSpec& a, const FiltrationSpec& b) {
    return a.ambient_ == b.ambient_ && a.lo_ == b.lo_ && a.steps_ == b.steps_;
  }
  friend bool operator!=(const FiltrationSpec& a, const FiltrationSpec& b) {
    return !(a == b);
  }

private:
  int ambient_;
  int lo_, hi_;                  // jump range; steps_ covers lo..hi+1
  std::vector<Subspace> steps_;  // steps_[j - lo_], front = full, back = zero
  Subspace full_, zero_;
};

/// Concrete graded model of a filtration: for each degree j a basis of a
/// complement of step(j+1) inside step(j), chosen by the deterministic
/// pivot rule from exactla. The layers stack, in increasing degree order,
/// to a basis of the ambient space ("flat" coordinates below).
class GradedRealization {
public:
  explicit GradedRealization(FiltrationSpec filt);

  const FiltrationSpec& filtration() const { return filt_; }
  int lo() const { return filt_.lo(); }
  int hi() const { return filt_.hi(); }
  int dim(int j) const { return filt_.gr_dim(j); }
  int total_dim() const { return filt_.ambient_dim(); }

  /// Basis of the degree-j layer, one ambient-coordinate vector per row.
  const Mat& layer_basis(int j) const;
  /// Column offset of the degree-j block inside flat coordinates.
  int offset(int j) const;

  /// Change of basis into flat graded coordinates: flatten(x) = F x where
  /// F is the inverse of the stacked layer basis.
  Vec flatten(const Vec& x) const { return flatten_ * x; }
  const Mat& flatten_matrix() const { return flatten_; }

  /// Component of x in the degree-j layer along step(j+1), as coordinates
  /// in the layer basis. Well defined on step(j); lower-degree components
  /// of the input must vanish.
  Vec project(int j, const Vec& x) const;
  /// Ambient vector with the given degree-j layer coordinates.
  Vec lift(int j, const Vec& coords) const;

private:
  FiltrationSpec filt_;
  std::vector<Mat> layers_;  // layers_[j - lo()], possibly 0-row
  std::vector<int> offsets_;
  Mat flatten_;
};

/// Filtration-preserving linear map between filtered spaces.
struct FilteredMap {
  FiltrationSpec domain;
  FiltrationSpec codomain;
  Mat matrix;  // codomain.ambient_dim() rows, domain.ambient_dim() columns

  /// True when matrix maps domain step(j) into codomain step(j) for all j.
  bool is_filtered() const;
};

/// Degree-preserving map on associated graded spaces, stored per degree.
struct GradedMap {
  GradedRealization domain;
  GradedRealization codomain;
  std::map<int, Mat> blocks;  // degree j -> block gr_j(domain) -> gr_j(codomain)

  /// Block-diagonal matrix in flat graded coordinates.
  Mat flat() const;
};

/// The induced map gr f on associated graded spaces; block j is f's action
/// on step(j) modulo step(j+1). Throws NotFiltered when f is not
/// filtration preserving.
GradedMap gr_map(const FilteredMap& f);

/// Image of a subspace under the gr functor: per degree j, a basis of
/// (sub ∩ step(j) + step(j+1)) / step(j+1) in layer coordinates, plus the
/// same data embedded into flat graded coordinates. Total dimension equals
/// dim(sub).
struct GrSubspace {
  GradedSpace space;
  std::map<int, Mat> layer_bases;  // degree -> rows of layer coordinates
  Subspace flat;
};
GrSubspace gr_subspace(const FiltrationSpec& flag, const Subspace& sub);

/// Induced filtration on Hom(A, B) in flattened row-major matrix
/// coordinates: step(k) = {X : X A_j ⊆ B_{j+k} for all j}.
FiltrationSpec hom_filtration(const FiltrationSpec& a, const FiltrationSpec& b);

/// Induced filtration on gl(W) = Hom(W, W) for a filtration of W.
FiltrationSpec gl_filtration(const FiltrationSpec& flag);

/// Coordinate-wise direct sum: step(j) = ⊕ parts[i].step(j) inside the
/// concatenated ambient space.
FiltrationSpec direct_sum_filtration(const std::vector<FiltrationSpec>& parts);

/// Filtration on A ⊗ B (coordinates a ⊗ b -> index p * dim(B) + q):
/// step(j) = span{a ⊗ b : a ∈ A_{j1}, b ∈ B_{j2}, j1 + j2 > j}.
FiltrationSpec tensor_filtration(const FiltrationSpec& a, const FiltrationSpec& b);

/// The three statements of the filtered-map lemma evaluated on given data:
/// (1) gr(ker f) ⊆ ker(gr f);
/// (2) if gr C ⊕ im gr f = gr B then C + im f = B;
/// (3) under the same hypothesis, gr(f^{-1}(C)) = ker(gr f).
/// Statements 2 and 3 are reported true when the hypothesis fails, with
/// hypothesis_holds recording applicability.
struct LemmaAbcReport {
  bool hypothesis_holds;
  bool ker_inclusion;
  bool surjectivity_transfer;
  bool preimage_identity;
  bool all_ok() const {
    return ker_inclusion && surjectivity_transfer && preimage_identity;
  }
};
LemmaAbcReport lemma_abc_check(const FilteredMap& f, const Subspace& c);

/// Filtrations on every layer g^{-i} induced by a filtration of g^{-1}:
/// g^{-i}_j = span of brackets [v_1,[...,v_i]] with v_k of weight j_k and
/// Σ j_k ≥ j. Entry i-1 of the result filters g^{-i}; entry 0 is the
/// normalized input flag. Requires a fundamental symbol so that deeper
/// layers are spanned by brackets.
std::vector<FiltrationSpec> induced_symbol_filtration(const NilpotentSymbol& m,
                                                      const FiltrationSpec& flag);

/// Associated bigraded algebra of a symbol with a filtration on g^{-1},
/// flattened back to a symbol graded by the original Lie degree. Layer -i
/// of the result is ⊕_j g^{-i}_j / g^{-i}_{j+1} ordered by increasing
/// weight j; bidegree_dims records the (degree, weight) -> dim table.
/// The witness maps layer -i of the input to layer -i of the result,
/// built by extending the flat identification on g^{-1} through brackets;
/// homomorphism and invertibility are verified, not assumed.
struct BigradedGr {
  NilpotentSymbol algebra;
  std::map<std::pair<int, int>, int> bidegree_dims;
  std::vector<Mat> witness;  // witness[i-1] : g^{-i} -> result layer -i
  bool witness_homomorphism;
  bool witness_invertible;
  bool is_isomorphism() const { return witness_homomorphism && witness_invertible; }
};
BigradedGr bigraded_gr(const NilpotentSymbol& m, const FiltrationSpec& flag);

}  // namespace tanaka

#endif
