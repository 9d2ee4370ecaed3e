#include "tanaka/derivations.hpp"

#include <stdexcept>
#include <utility>

namespace tanaka {

namespace {

// Unknown layout for a block-diagonal degree-zero map: the block on g^{-i}
// is d_i x d_i, vectorized row-major; entry (p, q) of that block sits at
// off[i-1] + p * d_i + q.
struct Layout {
  std::vector<int> dims;
  std::vector<int> off;
  int total = 0;
};

Layout make_layout(const NilpotentSymbol& m) {
  Layout lay;
  lay.dims = m.layer_dims();
  for (int d : lay.dims) {
    lay.off.push_back(lay.total);
    lay.total += d * d;
  }
  return lay;
}

// Rows of the linear system D[e_a, e_b] - [D e_a, e_b] - [e_a, D e_b] = 0
// over all basis pairs, in the unknowns of `lay` padded with `extra`
// trailing unknowns (coefficients zero here; restrictions use them).
std::vector<Vec> leibniz_rows(const NilpotentSymbol& m, const Layout& lay, int extra) {
  std::vector<Vec> rows;
  int n = lay.total + extra;
  for (int i = 1; i <= m.depth(); ++i)
    for (int j = i; j <= m.depth(); ++j) {
      int k = i + j;
      int dk = m.dim(-k);
      if (dk == 0) continue;  // bracket lands below the depth, every term vanishes
      for (int a = 0; a < m.dim(-i); ++a)
        for (int b = (i == j ? a + 1 : 0); b < m.dim(-j); ++b) {
          const Vec& c = m.bracket(-i, a, -j, b);
          for (int t = 0; t < dk; ++t) {
            Vec row(n, Rat(0));
            for (int r = 0; r < dk; ++r)
              if (!c[r].is_zero()) row[lay.off[k - 1] + t * dk + r] += c[r];
            for (int p = 0; p < m.dim(-i); ++p) {
              const Rat& v = m.bracket(-i, p, -j, b)[t];
              if (!v.is_zero()) row[lay.off[i - 1] + p * lay.dims[i - 1] + a] -= v;
            }
            for (int q = 0; q < m.dim(-j); ++q) {
              const Rat& v = m.bracket(-i, a, -j, q)[t];
              if (!v.is_zero()) row[lay.off[j - 1] + q * lay.dims[j - 1] + b] -= v;
            }
            rows.push_back(std::move(row));
          }
        }
    }
  return rows;
}

std::vector<Mat> unpack_blocks(const Layout& lay, const Vec& v) {
  std::vector<Mat> blocks;
  for (size_t i = 0; i < lay.dims.size(); ++i) {
    int d = lay.dims[i];
    Vec slice(v.begin() + lay.off[i], v.begin() + lay.off[i] + d * d);
    blocks.push_back(Mat::unvec(slice, d, d));
  }
  return blocks;
}

// Solve the homogeneous system, drop the trailing extra unknowns, and
// canonicalize the block part (this also discards directions that are pure
// extra-unknown, which only arise for degenerate inputs).
Subalgebra0 solve_blocks(const NilpotentSymbol& m, const std::vector<Vec>& rows,
                         int extra) {
  Layout lay = make_layout(m);
  int n = lay.total + extra;
  Subspace sol = rows.empty() ? Subspace::full(n) : kernel(Mat::from_rows(rows, n));
  std::vector<Vec> projected;
  for (int t = 0; t < sol.dim(); ++t) {
    Vec full = sol.basis_vector(t);
    projected.emplace_back(full.begin(), full.begin() + lay.total);
  }
  Subspace canon = Subspace::span(Mat::from_rows(projected, lay.total));
  std::vector<std::vector<Mat>> elements;
  for (int t = 0; t < canon.dim(); ++t)
    elements.push_back(unpack_blocks(lay, canon.basis_vector(t)));
  return Subalgebra0(m, std::move(elements));
}

void check_omega(const NilpotentSymbol& m, const Mat& omega) {
  int d1 = m.dim(-1);
  if (omega.rows() != d1 || omega.cols() != d1)
    throw std::invalid_argument("omega must be square of size dim g^{-1}");
  for (int p = 0; p < d1; ++p)
    for (int q = 0; q <= p; ++q)
      if (omega.at(p, q) != -omega.at(q, p))
        throw std::invalid_argument("omega must be antisymmetric");
}

// A^T omega + omega A - lambda omega = 0 on the g^{-1} block. When
// `conformal` is false the lambda column is absent and the last term drops.
std::vector<Vec> symplectic_rows(const NilpotentSymbol& m, const Layout& lay,
                                 const Mat& omega, bool conformal) {
  int d1 = lay.dims[0];
  int n = lay.total + (conformal ? 1 : 0);
  std::vector<Vec> rows;
  for (int p = 0; p < d1; ++p)
    for (int q = p + 1; q < d1; ++q) {  // the constraint matrix is antisymmetric
      Vec row(n, Rat(0));
      for (int r = 0; r < d1; ++r) {
        row[r * d1 + p] += omega.at(r, q);
        row[r * d1 + q] += omega.at(p, r);
      }
      if (conformal) row[lay.total] -= omega.at(p, q);
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace

Subalgebra0::Subalgebra0(NilpotentSymbol parent, std::vector<std::vector<Mat>> elements)
    : parent_(std::move(parent)),
      elements_(std::move(elements)),
      top_span_(Subspace::zero(parent_.dim(-1) * parent_.dim(-1))) {
  int depth = parent_.depth();
  for (const auto& blocks : elements_) {
    if (int(blocks.size()) != depth)
      throw std::invalid_argument("element needs one block per layer");
    for (int i = 1; i <= depth; ++i)
      if (blocks[i - 1].rows() != parent_.dim(-i) || blocks[i - 1].cols() != parent_.dim(-i))
        throw std::invalid_argument("element block has wrong shape");
  }

  // Derivation property on every basis pair of the parent.
  for (const auto& blocks : elements_)
    for (int i = 1; i <= depth; ++i)
      for (int j = i; j <= depth; ++j) {
        int k = i + j;
        if (parent_.dim(-k) == 0) continue;
        for (int a = 0; a < parent_.dim(-i); ++a)
          for (int b = 0; b < parent_.dim(-j); ++b) {
            Vec lhs = blocks[k - 1] * parent_.bracket(-i, a, -j, b);
            Vec rhs =
                parent_.bracket_vectors(-i, blocks[i - 1].col(a), -j,
                                        unit_vec(parent_.dim(-j), b)) +
                parent_.bracket_vectors(-i, unit_vec(parent_.dim(-i), a), -j,
                                        blocks[j - 1].col(b));
            if (lhs != rhs)
              throw std::invalid_argument("element is not a derivation");
          }
      }

  // Elements must be independent and determined by their g^{-1} block.
  int d1 = parent_.dim(-1);
  std::vector<Vec> top_rows;
  for (const auto& blocks : elements_) top_rows.push_back(blocks[0].vec());
  Mat top = Mat::from_rows(top_rows, d1 * d1);
  if (rank(top) != dim())
    throw std::invalid_argument("elements must be independent and determined on g^{-1}");
  top_span_ = Subspace::span(top);

  // Closure under commutators, recording structure constants as we go.
  Layout lay = make_layout(parent_);
  std::vector<Vec> flat_rows;
  for (const auto& blocks : elements_) {
    Vec flat;
    for (const Mat& b : blocks) {
      Vec v = b.vec();
      flat.insert(flat.end(), v.begin(), v.end());
    }
    flat_rows.push_back(std::move(flat));
  }
  Mat basis = Mat::from_rows(flat_rows, lay.total);
  struct_.assign(dim(), std::vector<Vec>(dim(), Vec(dim(), Rat(0))));
  for (int s = 0; s < dim(); ++s)
    for (int t = s + 1; t < dim(); ++t) {
      Vec comm;
      for (int i = 0; i < depth; ++i) {
        Vec v = commutator(elements_[s][i], elements_[t][i]).vec();
        comm.insert(comm.end(), v.begin(), v.end());
      }
      AffineSolution sol = solve_affine(basis.transpose(), comm);
      if (!sol.solvable)
        throw NotASubalgebra("commutator of elements " + std::to_string(s) + " and " +
                             std::to_string(t) + " leaves the span");
      struct_[s][t] = sol.particular;
      struct_[t][s] = -sol.particular;
    }
}

Vec Subalgebra0::apply(const Vec& coeffs, int degree, const Vec& x) const {
  if (degree < -parent_.depth() || degree > -1)
    throw std::out_of_range("apply: degree outside [-depth, -1]");
  if (int(coeffs.size()) != dim() || int(x.size()) != parent_.dim(degree))
    throw std::invalid_argument("apply: size mismatch");
  Vec out(parent_.dim(degree), Rat(0));
  for (int t = 0; t < dim(); ++t) {
    if (coeffs[t].is_zero()) continue;
    out = out + coeffs[t] * (elements_[t][-degree - 1] * x);
  }
  return out;
}

Subalgebra0 derivations0(const NilpotentSymbol& m) {
  Layout lay = make_layout(m);
  return solve_blocks(m, leibniz_rows(m, lay, 0), 0);
}

Subalgebra0 restrict_to_csp(const NilpotentSymbol& m, const Mat& omega) {
  check_omega(m, omega);
  Layout lay = make_layout(m);
  std::vector<Vec> rows = leibniz_rows(m, lay, 1);
  std::vector<Vec> extra = symplectic_rows(m, lay, omega, true);
  rows.insert(rows.end(), extra.begin(), extra.end());
  return solve_blocks(m, rows, 1);
}

Subalgebra0 restrict_to_sp(const NilpotentSymbol& m, const Mat& omega) {
  check_omega(m, omega);
  Layout lay = make_layout(m);
  std::vector<Vec> rows = leibniz_rows(m, lay, 0);
  std::vector<Vec> extra = symplectic_rows(m, lay, omega, false);
  rows.insert(rows.end(), extra.begin(), extra.end());
  return solve_blocks(m, rows, 0);
}

Subalgebra0 restrict_to_custom(const NilpotentSymbol& m,
                               const std::vector<Mat>& basis_on_top) {
  int d1 = m.dim(-1);
  std::vector<Vec> vecs;
  for (const Mat& b : basis_on_top) {
    if (b.rows() != d1 || b.cols() != d1)
      throw std::invalid_argument("custom basis matrix has wrong shape");
    vecs.push_back(b.vec());
  }
  Subspace allowed = Subspace::span(Mat::from_rows(vecs, d1 * d1));
  Mat eqs = allowed.defining_equations();
  Layout lay = make_layout(m);
  std::vector<Vec> rows = leibniz_rows(m, lay, 0);
  for (int r = 0; r < eqs.rows(); ++r) {
    Vec row(lay.total, Rat(0));
    for (int c = 0; c < d1 * d1; ++c) row[c] = eqs.at(r, c);
    rows.push_back(std::move(row));
  }
  return solve_blocks(m, rows, 0);
}

}  // namespace tanaka
