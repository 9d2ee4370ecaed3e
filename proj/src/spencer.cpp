#include "tanaka/spencer.hpp"

#include <numeric>
#include <stdexcept>

#include "tanaka/nilpotent.hpp"

namespace tanaka {

namespace {

// Dimension of the degree d space attached to u: symbol layers below zero,
// computed components otherwise. Callers only pass d <= the component the
// precondition of spencer_gr guarantees, so Capped algebras never throw here.
int space_dim(const ProlongedAlgebra& u, int d) {
  if (d < 0) return u.negative().dim(d);
  return u.dim(d);
}

}  // namespace

int SpencerMap::domain_dim() const {
  return std::accumulate(domain_dims.begin(), domain_dims.end(), 0);
}

int SpencerMap::target_dim() const {
  return std::accumulate(target_dims.begin(), target_dims.end(), 0);
}

SpencerMap spencer_gr(const ProlongedAlgebra& u, int k) {
  if (k < 0) {
    throw std::invalid_argument("spencer_gr: degree must be nonnegative");
  }
  if (u.status() == ProlongStatus::Capped && k > u.max_degree()) {
    throw std::out_of_range(
        "spencer_gr: needs components up to the requested degree, beyond the cap");
  }

  const NilpotentSymbol& m = u.negative();
  const int depth = m.depth();
  const int d1 = m.dim(-1);

  SpencerMap s;
  s.degree = k;

  // Domain: Hom(g^{-i}, g^{k+1-i}) for i = 1..depth, then Hom(g^i, g^k) for
  // i = 0..k-1. The negative part is laid out exactly like the unknowns of
  // the degree k+1 component, so kernels identify with g^{k+1} coordinates.
  std::vector<int> dom_off;
  int dom_total = 0;
  for (int i = 1; i <= depth; ++i) {
    const int size = m.dim(-i) * space_dim(u, k + 1 - i);
    s.domain_dims.push_back(size);
    dom_off.push_back(dom_total);
    dom_total += size;
  }
  for (int i = 0; i < k; ++i) {
    const int size = space_dim(u, i) * space_dim(u, k);
    s.domain_dims.push_back(size);
    dom_off.push_back(dom_total);
    dom_total += size;
  }

  // Target: Hom(g^{-1} (x) g^{-j}, g^{k-j}) for j = 2..depth, the wedge
  // block Hom(g^{-1} /\ g^{-1}, g^{k-1}), then Hom(g^{-1} (x) g^i, g^{k-1})
  // for i = 0..k-1.
  const int pairs = d1 * (d1 - 1) / 2;
  int tgt_total = 0;
  for (int j = 2; j <= depth; ++j) {
    const int size = space_dim(u, k - j) * d1 * m.dim(-j);
    s.target_dims.push_back(size);
    tgt_total += size;
  }
  s.target_dims.push_back(space_dim(u, k - 1) * pairs);
  tgt_total += s.target_dims.back();
  for (int i = 0; i < k; ++i) {
    const int size = space_dim(u, k - 1) * d1 * space_dim(u, i);
    s.target_dims.push_back(size);
    tgt_total += size;
  }

  s.matrix = Mat(tgt_total, dom_total);

  // Column of the unit map e_{c0} -> e_{t0} sitting in the given domain
  // summand: evaluate the operator on every basis pair (v1, v2) with v1 in
  // g^{-1}. Only the delta terms below survive for a unit map, so each pair
  // costs at most three bracket lookups.
  //
  //   v2 in g^{-j}:  [f(v1), v2] + [v1, f(v2)] - f([v1, v2])
  //   v2 in g^i:     [v1, f(v2)]
  auto fill_column = [&](int col, int f_src, int t0, int c0) {
    int row_base = 0;
    // Tensor blocks, v2 in g^{-j}, j >= 2.
    for (int j = 2; j <= depth; ++j) {
      const int dj = m.dim(-j);
      const int val_rows = space_dim(u, k - j);
      if (val_rows > 0 && dj > 0) {
        for (int a = 0; a < d1; ++a) {
          for (int c = 0; c < dj; ++c) {
            Vec val(val_rows, Rat(0));
            bool touched = false;
            if (f_src == -1 && c0 == a) {
              val = val + u.bracket(k, unit_vec(space_dim(u, k), t0), -j,
                                    unit_vec(dj, c));
              touched = true;
            }
            if (f_src == -j && c0 == c) {
              val = val + u.bracket(-1, unit_vec(d1, a), k + 1 - j,
                                    unit_vec(space_dim(u, k + 1 - j), t0));
              touched = true;
            }
            if (f_src == -j - 1) {
              const Vec& w = m.bracket(-1, a, -j, c);
              if (!w[c0].is_zero()) {
                val[t0] = val[t0] - w[c0];
                touched = true;
              }
            }
            if (touched) {
              const int pair_index = a * dj + c;
              for (int t = 0; t < val_rows; ++t) {
                s.matrix.at(row_base + t * d1 * dj + pair_index, col) = val[t];
              }
            }
          }
        }
      }
      row_base += val_rows * d1 * dj;
    }
    // Wedge block, v1 = e_a, v2 = e_b in g^{-1}, a < b.
    {
      const int val_rows = space_dim(u, k - 1);
      if (val_rows > 0 && pairs > 0) {
        int pair_index = 0;
        for (int a = 0; a < d1; ++a) {
          for (int b = a + 1; b < d1; ++b, ++pair_index) {
            Vec val(val_rows, Rat(0));
            bool touched = false;
            if (f_src == -1 && c0 == a) {
              val = val + u.bracket(k, unit_vec(space_dim(u, k), t0), -1,
                                    unit_vec(d1, b));
              touched = true;
            }
            if (f_src == -1 && c0 == b) {
              val = val + u.bracket(-1, unit_vec(d1, a), k,
                                    unit_vec(space_dim(u, k), t0));
              touched = true;
            }
            if (f_src == -2) {
              const Vec& w = m.bracket(-1, a, -1, b);
              if (!w[c0].is_zero()) {
                val[t0] = val[t0] - w[c0];
                touched = true;
              }
            }
            if (touched) {
              for (int t = 0; t < val_rows; ++t) {
                s.matrix.at(row_base + t * pairs + pair_index, col) = val[t];
              }
            }
          }
        }
      }
      row_base += val_rows * pairs;
    }
    // Nonnegative blocks, v2 in g^i, 0 <= i < k.
    for (int i = 0; i < k; ++i) {
      const int ci = space_dim(u, i);
      const int val_rows = space_dim(u, k - 1);
      if (f_src == i && val_rows > 0) {
        const Vec image = unit_vec(space_dim(u, k), t0);
        for (int a = 0; a < d1; ++a) {
          const Vec val = u.bracket(-1, unit_vec(d1, a), k, image);
          const int pair_index = a * ci + c0;
          for (int t = 0; t < val_rows; ++t) {
            s.matrix.at(row_base + t * d1 * ci + pair_index, col) = val[t];
          }
        }
      }
      row_base += val_rows * d1 * ci;
    }
  };

  for (int i = 1; i <= depth; ++i) {
    const int src = m.dim(-i);
    const int tgt = space_dim(u, k + 1 - i);
    for (int t0 = 0; t0 < tgt; ++t0) {
      for (int c0 = 0; c0 < src; ++c0) {
        fill_column(dom_off[i - 1] + t0 * src + c0, -i, t0, c0);
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    const int src = space_dim(u, i);
    const int tgt = space_dim(u, k);
    for (int t0 = 0; t0 < tgt; ++t0) {
      for (int c0 = 0; c0 < src; ++c0) {
        fill_column(dom_off[depth + i] + t0 * src + c0, i, t0, c0);
      }
    }
  }

  return s;
}

Subspace normalization_complement(const SpencerMap& s) {
  return complement_in(col_space(s.matrix), Subspace::full(s.matrix.rows()));
}

}  // namespace tanaka
