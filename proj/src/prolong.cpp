#include "tanaka/prolong.hpp"

#include <stdexcept>
#include <utility>

#include "tanaka/subspace.hpp"

namespace tanaka {

namespace {

// Coordinate dimension of the degree-d space while comps may still be
// growing: layers of m below zero, computed components above, zero outside.
int rows_at(const NilpotentSymbol& m, const std::vector<std::vector<Action>>& comps,
            int d) {
  if (d < 0) return m.dim(d);
  if (d < int(comps.size())) return int(comps[d].size());
  return 0;
}

}  // namespace

ProlongedAlgebra::ProlongedAlgebra(NilpotentSymbol m, Subalgebra0 g0, int max_degree)
    : m_(std::move(m)), g0_(std::move(g0)) {
  if (!(g0_.parent() == m_))
    throw std::invalid_argument("g0 is attached to a different symbol");
  if (!m_.validate().ok())
    throw std::invalid_argument("symbol fails structural checks (Jacobi or fundamental)");
  if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
  cap_ = max_degree;

  std::vector<Action> zero_comp;
  for (int t = 0; t < g0_.dim(); ++t)
    zero_comp.push_back(Action{0, g0_.element_blocks(t)});
  comps_.push_back(std::move(zero_comp));

  status_ = ProlongStatus::Capped;
  for (int k = 1; k <= max_degree; ++k) {
    std::vector<Action> comp = solve_component(k);
    if (comp.empty()) {
      status_ = ProlongStatus::Terminated;
      terminated_at_ = k - 1;
      while (terminated_at_ >= 0 && comps_[terminated_at_].empty()) --terminated_at_;
      // Elements are determined on g^{-1}, so one zero component kills all
      // later ones; re-solving the next degree checks that the solver agrees.
      verification_.termination_zero = solve_component(k + 1).empty();
      break;
    }
    comps_.push_back(std::move(comp));
  }

  build_positive_table();
  verify();
}

// Basis of the degree-k component: kernel of the Leibniz identity
//   f([u, v]) = [f(u), v] + [u, f(v)]   for all u, v in the negative part,
// over block unknowns f_i : g^{-i} -> comp(k - i). Unknown f_i(t, c) sits at
// off[i-1] + t * dim g^{-i} + c, blocks vectorized row major.
std::vector<Action> ProlongedAlgebra::solve_component(int k) const {
  int depth = m_.depth();
  std::vector<int> block_rows(depth), off(depth);
  int total = 0;
  for (int i = 1; i <= depth; ++i) {
    block_rows[i - 1] = rows_at(m_, comps_, k - i);
    off[i - 1] = total;
    total += block_rows[i - 1] * m_.dim(-i);
  }
  if (total == 0) return {};

  std::vector<Vec> rows;
  for (int i = 1; i <= depth; ++i)
    for (int j = i; j <= depth; ++j) {
      int target = rows_at(m_, comps_, k - i - j);
      if (target == 0) continue;
      int di = m_.dim(-i), dj = m_.dim(-j);
      for (int a = 0; a < di; ++a)
        for (int b = (i == j ? a + 1 : 0); b < dj; ++b)
          for (int t = 0; t < target; ++t) {
            Vec row(total, Rat(0));
            // f([e_a, e_b]) through the block on g^{-(i+j)}.
            if (i + j <= depth) {
              const Vec& c = m_.bracket(-i, a, -j, b);
              int dij = m_.dim(-(i + j));
              for (int r = 0; r < dij; ++r)
                if (!c[r].is_zero()) row[off[i + j - 1] + t * dij + r] += c[r];
            }
            // -[f(e_a), e_b] with f(e_a) in degree k - i.
            for (int p = 0; p < block_rows[i - 1]; ++p) {
              Rat coef = (k - i < 0) ? m_.bracket(k - i, p, -j, b)[t]
                                     : comps_[k - i][p].blocks[j - 1].at(t, b);
              if (!coef.is_zero()) row[off[i - 1] + p * di + a] -= coef;
            }
            // -[e_a, f(e_b)] with f(e_b) in degree k - j; for nonnegative
            // degree the bracket with e_a on the left flips sign.
            for (int q = 0; q < block_rows[j - 1]; ++q) {
              if (k - j < 0) {
                const Rat& coef = m_.bracket(-i, a, k - j, q)[t];
                if (!coef.is_zero()) row[off[j - 1] + q * dj + b] -= coef;
              } else {
                const Rat& coef = comps_[k - j][q].blocks[i - 1].at(t, a);
                if (!coef.is_zero()) row[off[j - 1] + q * dj + b] += coef;
              }
            }
            rows.push_back(std::move(row));
          }
    }

  Subspace sol = rows.empty() ? Subspace::full(total)
                              : kernel(Mat::from_rows(rows, total));
  std::vector<Action> comp;
  for (int s = 0; s < sol.dim(); ++s) {
    const Vec v = sol.basis_vector(s);
    Action act;
    act.degree = k;
    for (int i = 1; i <= depth; ++i) {
      Vec slice(v.begin() + off[i - 1],
                v.begin() + off[i - 1] + block_rows[i - 1] * m_.dim(-i));
      act.blocks.push_back(Mat::unvec(slice, block_rows[i - 1], m_.dim(-i)));
    }
    comp.push_back(std::move(act));
  }
  return comp;
}

// Action of [e^k_a, e^l_b] on the negative part, assembled from
//   [f1, f2] v = [f1(v), f2] + [f1, f2(v)]
// with [w, f] = -f(w) for negative w and lower-total-degree table entries
// for the nonnegative cases.
Action ProlongedAlgebra::assemble_bracket(int k, int a, int l, int b) const {
  int depth = m_.depth();
  int s = k + l;
  const Action& f1 = comps_[k][a];
  const Action& f2 = comps_[l][b];
  auto lookup = [&](int dk, int ta, int dl, int tb) -> Vec {
    // Totals here are strictly below s, so for a stored pair the table is
    // already filled; beyond the last component the bracket is zero.
    if (dk + dl > max_degree()) return Vec(rows_at(m_, comps_, dk + dl), Rat(0));
    return pos_table_[dk][dl][ta][tb];
  };
  Action out;
  out.degree = s;
  for (int i = 1; i <= depth; ++i) {
    int out_rows = rows_at(m_, comps_, s - i);
    int di = m_.dim(-i);
    Mat blk(out_rows, di);
    for (int c = 0; c < di; ++c) {
      Vec val(out_rows, Rat(0));
      Vec w1 = f1.blocks[i - 1].col(c);  // f1(e_c), degree k - i
      if (k - i < 0) {
        if (k - i >= -depth) val = val - f2.blocks[(i - k) - 1] * w1;
      } else {
        for (int t = 0; t < int(w1.size()); ++t)
          if (!w1[t].is_zero()) val = val + w1[t] * lookup(k - i, t, l, b);
      }
      Vec w2 = f2.blocks[i - 1].col(c);  // f2(e_c), degree l - i
      if (l - i < 0) {
        if (l - i >= -depth) val = val + f1.blocks[(i - l) - 1] * w2;
      } else {
        for (int t = 0; t < int(w2.size()); ++t)
          if (!w2[t].is_zero()) val = val + w2[t] * lookup(k, a, l - i, t);
      }
      for (int r = 0; r < out_rows; ++r) blk.at(r, c) = val[r];
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

// Coordinates of an assembled action in the stored basis of its component.
// Only the g^{-1} block is solved against (the basis is injective there);
// the remaining blocks are verified, so a disagreement cannot slip through.
Vec ProlongedAlgebra::express_in_component(const Action& act) const {
  const std::vector<Action>& basis = comps_.at(act.degree);
  int d1 = m_.dim(-1);
  int top_rows = rows_at(m_, comps_, act.degree - 1);
  std::vector<Vec> cols;
  for (const Action& e : basis) cols.push_back(e.blocks[0].vec());
  Mat system = Mat::from_rows(cols, top_rows * d1).transpose();
  AffineSolution sol = solve_affine(system, act.blocks[0].vec());
  if (!sol.solvable)
    throw std::logic_error("bracket leaves the computed component on g^{-1}");
  for (int i = 2; i <= m_.depth(); ++i) {
    Mat recon(act.blocks[i - 1].rows(), act.blocks[i - 1].cols());
    for (size_t r = 0; r < basis.size(); ++r)
      recon = recon + sol.particular[r] * basis[r].blocks[i - 1];
    if (!(recon == act.blocks[i - 1]))
      throw std::logic_error("bracket action disagrees beyond g^{-1}");
  }
  return sol.particular;
}

void ProlongedAlgebra::build_positive_table() {
  int top = max_degree();
  pos_table_.assign(top + 1, {});
  for (int k = 0; k <= top; ++k) {
    pos_table_[k].assign(top + 1, {});
    for (int l = 0; k + l <= top; ++l)
      pos_table_[k][l].assign(comps_[k].size(),
                              std::vector<Vec>(comps_[l].size(),
                                               Vec(comps_[k + l].size(), Rat(0))));
  }
  for (int s = 0; s <= top; ++s)
    for (int k = 0; k <= s; ++k) {
      int l = s - k;
      if (k > l) continue;
      for (int a = 0; a < int(comps_[k].size()); ++a)
        for (int b = (k == l ? a + 1 : 0); b < int(comps_[l].size()); ++b) {
          Vec coords = (s == 0) ? g0_.structure_constant(a, b)
                                : express_in_component(assemble_bracket(k, a, l, b));
          pos_table_[l][k][b][a] = -coords;
          pos_table_[k][l][a][b] = std::move(coords);
        }
    }
  if (status_ != ProlongStatus::Terminated) return;
  // Past the last component every bracket must assemble to the zero action.
  for (int s = top + 1; s <= 2 * top; ++s)
    for (int k = s - top; k <= top && k <= s - k; ++k) {
      int l = s - k;
      for (int a = 0; a < int(comps_[k].size()); ++a)
        for (int b = (k == l ? a + 1 : 0); b < int(comps_[l].size()); ++b) {
          Action act = assemble_bracket(k, a, l, b);
          for (const Mat& blk : act.blocks)
            if (!(blk == Mat(blk.rows(), blk.cols())))
              verification_.termination_zero = false;
        }
    }
}

void ProlongedAlgebra::verify() {
  int top = max_degree();
  int d1 = m_.dim(-1);

  // Injectivity of restriction to g^{-1}: rank of the stacked top blocks.
  for (int k = 0; k <= top; ++k) {
    std::vector<Vec> rows;
    for (const Action& e : comps_[k]) rows.push_back(e.blocks[0].vec());
    int width = rows_at(m_, comps_, k - 1) * d1;
    bool injective = rank(Mat::from_rows(rows, width)) == int(comps_[k].size());
    verification_.transitivity = verification_.transitivity && injective;
    if (k >= 1) verification_.determinacy = verification_.determinacy && injective;
  }

  // Graded Jacobi identity over all basis triples whose brackets are
  // representable (everything, except pairs beyond the cap of a Capped run).
  std::vector<std::pair<int, int>> basis;
  for (int d = -m_.depth(); d <= top; ++d)
    for (int t = 0; t < dim(d); ++t) basis.emplace_back(d, t);
  auto repr = [&](int da, int db) {
    return status_ == ProlongStatus::Terminated || da < 0 || db < 0 || da + db <= cap_;
  };
  auto unit = [&](int d, int t) { return unit_vec(dim(d), t); };
  for (size_t p = 0; p < basis.size(); ++p)
    for (size_t q = p; q < basis.size(); ++q)
      for (size_t r = q; r < basis.size(); ++r) {
        auto [dp, tp] = basis[p];
        auto [dq, tq] = basis[q];
        auto [dr, tr] = basis[r];
        if (!(repr(dp, dq) && repr(dq, dr) && repr(dr, dp) && repr(dp, dq + dr) &&
              repr(dq, dr + dp) && repr(dr, dp + dq)))
          continue;
        Vec jac = bracket(dp, unit(dp, tp), dq + dr,
                          bracket(dq, unit(dq, tq), dr, unit(dr, tr))) +
                  bracket(dq, unit(dq, tq), dr + dp,
                          bracket(dr, unit(dr, tr), dp, unit(dp, tp))) +
                  bracket(dr, unit(dr, tr), dp + dq,
                          bracket(dp, unit(dp, tp), dq, unit(dq, tq)));
        for (const Rat& x : jac)
          if (!x.is_zero()) verification_.jacobi = false;
      }
}

int ProlongedAlgebra::dim(int degree) const {
  if (degree < 0) return m_.dim(degree);
  if (degree < int(comps_.size())) return int(comps_[degree].size());
  if (status_ == ProlongStatus::Terminated) return 0;
  throw std::out_of_range("degree beyond the cap of a Capped prolongation");
}

int ProlongedAlgebra::total_dim() const {
  int total = m_.total_dim();
  for (const auto& comp : comps_) total += int(comp.size());
  return total;
}

Vec ProlongedAlgebra::bracket(int d1, const Vec& x, int d2, const Vec& y) const {
  if (int(x.size()) != dim(d1) || int(y.size()) != dim(d2))
    throw std::invalid_argument("bracket: coordinate size mismatch");
  // A zero-dimensional side (below the depth, or past a terminated top)
  // gives zero before any block is indexed.
  if (x.empty() || y.empty()) return Vec(dim(d1 + d2), Rat(0));
  if (d1 < 0 && d2 < 0) return m_.bracket_vectors(d1, x, d2, y);
  if (d1 >= 0 && d2 < 0) {
    Vec out(dim(d1 + d2), Rat(0));
    for (int a = 0; a < int(x.size()); ++a) {
      if (x[a].is_zero()) continue;
      out = out + x[a] * (comps_[d1][a].blocks[-d2 - 1] * y);
    }
    return out;
  }
  if (d1 < 0) return -bracket(d2, y, d1, x);
  int s = d1 + d2;
  if (s > max_degree()) {
    if (status_ == ProlongStatus::Terminated) return Vec(dim(s), Rat(0));
    throw std::out_of_range("bracket lands beyond the cap of a Capped prolongation");
  }
  Vec out(dim(s), Rat(0));
  for (int a = 0; a < int(x.size()); ++a)
    for (int b = 0; b < int(y.size()); ++b) {
      if (x[a].is_zero() || y[b].is_zero()) continue;
      out = out + (x[a] * y[b]) * pos_table_[d1][d2][a][b];
    }
  return out;
}

ProlongedAlgebra tanaka_prolong(const NilpotentSymbol& m, const Subalgebra0& g0,
                                int max_degree) {
  return ProlongedAlgebra(m, g0, max_degree);
}

}  // namespace tanaka
