#include "tanaka/subspace.hpp"

#include <cassert>

namespace tanaka {

Subspace Subspace::span(const Mat& rows) {
  Rref f = rref(rows);
  Subspace s(rows.cols());
  s.basis_ = f.m;
  s.pivots_ = f.pivots;
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& rows, int ambient) {
  return span(Mat::from_rows(rows, ambient));
}

bool Subspace::contains(const Vec& v) const {
  assert(int(v.size()) == ambient_);
  // RREF basis: the only candidate combination takes the pivot coordinates
  // of v as coefficients; v is inside iff that combination reproduces it.
  Vec acc(ambient_, Rat(0));
  for (int r = 0; r < basis_.rows(); ++r) axpy(v[pivots_[r]], basis_.row(r), acc);
  return acc == v;
}

bool Subspace::contains(const Subspace& s) const {
  if (s.ambient_ != ambient_) return false;
  for (int i = 0; i < s.dim(); ++i)
    if (!contains(s.basis_vector(i))) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  assert(ambient_ == o.ambient_);
  return span(basis_.vstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  assert(ambient_ == o.ambient_);
  // x in both spaces iff both defining-equation stacks annihilate x.
  Mat eqs = defining_equations().vstack(o.defining_equations());
  return kernel(eqs);
}

std::optional<Vec> Subspace::coordinates_of(const Vec& v) const {
  assert(int(v.size()) == ambient_);
  Vec coords(dim());
  Vec acc(ambient_, Rat(0));
  for (int r = 0; r < basis_.rows(); ++r) {
    coords[r] = v[pivots_[r]];
    axpy(coords[r], basis_.row(r), acc);
  }
  if (acc != v) return std::nullopt;
  return coords;
}

Mat Subspace::defining_equations() const {
  if (dim() == 0) return Mat::identity(ambient_);
  return kernel_basis(basis_);
}

Subspace kernel(const Mat& a) { return Subspace::span(kernel_basis(a)); }

Subspace row_space(const Mat& a) { return Subspace::span(a); }

Subspace col_space(const Mat& a) { return Subspace::span(a.transpose()); }

Subspace complement_in(const Subspace& sub, const Subspace& ambient) {
  if (sub.ambient() != ambient.ambient() || !ambient.contains(sub))
    throw NotContained("complement_in: subspace not contained in ambient");
  int d = ambient.dim();
  std::vector<Vec> coord_rows;
  for (int i = 0; i < sub.dim(); ++i) {
    auto c = ambient.coordinates_of(sub.basis_vector(i));
    assert(c);
    coord_rows.push_back(*c);
  }
  Rref f = rref(Mat::from_rows(coord_rows, d));
  std::vector<bool> is_pivot(d, false);
  for (int p : f.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (int q = 0; q < d; ++q)
    if (!is_pivot[q]) out.push_back(ambient.basis_vector(q));
  return Subspace::span(out, ambient.ambient());
}

AffineSolution solve_affine(const Mat& a, const Vec& b) {
  assert(int(b.size()) == a.rows());
  Mat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Rref f = rref(aug);
  AffineSolution sol{true, Vec(a.cols(), Rat(0)), kernel(a)};
  for (int r = 0; r < f.rank(); ++r) {
    if (f.pivots[r] == a.cols()) {
      sol.solvable = false;
      sol.particular.clear();
      return sol;
    }
    sol.particular[f.pivots[r]] = f.m.at(r, a.cols());
  }
  return sol;
}

}  // namespace tanaka
