#include "tanaka/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace tanaka {

FiltrationSpec::FiltrationSpec(int ambient_dim,
                               std::vector<std::pair<int, Subspace>> steps)
    : ambient_(ambient_dim),
      full_(Subspace::full(std::max(ambient_dim, 0))),
      zero_(Subspace::zero(std::max(ambient_dim, 0))) {
  if (ambient_ < 0) throw std::invalid_argument("negative ambient dimension");
  if (ambient_ == 0) {
    lo_ = 0;
    hi_ = -1;
    return;
  }
  if (steps.empty()) steps.emplace_back(0, full_);
  for (const auto& [j, s] : steps)
    if (s.ambient() != ambient_)
      throw std::invalid_argument("filtration step in the wrong ambient space");
  for (size_t k = 0; k + 1 < steps.size(); ++k) {
    if (steps[k].first >= steps[k + 1].first)
      throw std::invalid_argument("filtration indices must strictly increase");
    if (!steps[k].second.contains(steps[k + 1].second))
      throw NotFiltered("filtration steps must decrease by inclusion");
  }

  // Dense fill across the stored range, one extra index on each side so the
  // stabilized values (full below, zero above) are present for trimming.
  int jmin = steps.front().first - 1;
  int jmax = steps.back().first + 1;
  std::vector<Subspace> dense;
  size_t idx = 0;
  for (int j = jmin; j <= jmax; ++j) {
    if (j < steps.front().first) {
      dense.push_back(full_);
    } else if (j > steps.back().first) {
      dense.push_back(zero_);
    } else {
      while (idx + 1 < steps.size() && steps[idx + 1].first <= j) ++idx;
      dense.push_back(steps[idx].second);
    }
  }
  while (dense.size() >= 2 && dense[0] == dense[1]) {
    dense.erase(dense.begin());
    ++jmin;
  }
  while (dense.size() >= 2 && dense[dense.size() - 1] == dense[dense.size() - 2]) {
    dense.pop_back();
    --jmax;
  }
  lo_ = jmin;
  hi_ = jmax - 1;
  steps_ = std::move(dense);
}

FiltrationSpec FiltrationSpec::trivial(int ambient_dim) {
  return FiltrationSpec(ambient_dim, {});
}

FiltrationSpec FiltrationSpec::complete_flag(int n) {
  std::vector<std::pair<int, Subspace>> steps;
  for (int j = 0; j < n; ++j) {
    std::vector<Vec> rows;
    for (int r = 0; r < n - j; ++r) rows.push_back(unit_vec(n, r));
    steps.emplace_back(j, Subspace::span(rows, n));
  }
  return FiltrationSpec(n, std::move(steps));
}

const Subspace& FiltrationSpec::step(int j) const {
  if (steps_.empty()) return zero_;  // zero-dimensional ambient space
  if (j < lo_) return full_;
  if (j > hi_ + 1) return zero_;
  return steps_[size_t(j - lo_)];
}

GradedSpace FiltrationSpec::graded() const {
  GradedSpace g;
  for (int j = lo_; j <= hi_; ++j)
    if (gr_dim(j) > 0) g.components[j] = gr_dim(j);
  return g;
}

GradedRealization::GradedRealization(FiltrationSpec filt)
    : filt_(std::move(filt)), flatten_(0, 0) {
  int n = filt_.ambient_dim();
  Mat stacked(0, n);
  int off = 0;
  for (int j = filt_.lo(); j <= filt_.hi(); ++j) {
    Subspace comp = complement_in(filt_.step(j + 1), filt_.step(j));
    offsets_.push_back(off);
    off += comp.dim();
    stacked = stacked.vstack(comp.basis());
    layers_.push_back(comp.basis());
  }
  if (n > 0) flatten_ = inverse(stacked.transpose());
}

const Mat& GradedRealization::layer_basis(int j) const {
  if (j < lo() || j > hi()) throw std::out_of_range("graded degree out of range");
  return layers_[size_t(j - lo())];
}

int GradedRealization::offset(int j) const {
  if (j < lo() || j > hi()) throw std::out_of_range("graded degree out of range");
  return offsets_[size_t(j - lo())];
}

Vec GradedRealization::project(int j, const Vec& x) const {
  Vec c = flatten(x);
  int o = offset(j);
  for (int t = 0; t < o; ++t)
    if (!c[t].is_zero())
      throw NotContained("vector is not in the filtration step being projected");
  return Vec(c.begin() + o, c.begin() + o + dim(j));
}

Vec GradedRealization::lift(int j, const Vec& coords) const {
  const Mat& basis = layer_basis(j);
  Vec out(total_dim(), Rat(0));
  for (int r = 0; r < basis.rows(); ++r) axpy(coords[r], basis.row(r), out);
  return out;
}

bool FilteredMap::is_filtered() const {
  int jlo = std::min(domain.lo(), codomain.lo());
  int jhi = std::max(domain.hi(), codomain.hi());
  for (int j = jlo; j <= jhi; ++j) {
    const Subspace& src = domain.step(j);
    const Subspace& dst = codomain.step(j);
    for (int r = 0; r < src.dim(); ++r)
      if (!dst.contains(matrix * src.basis_vector(r))) return false;
  }
  return true;
}

GradedMap gr_map(const FilteredMap& f) {
  if (f.matrix.rows() != f.codomain.ambient_dim() ||
      f.matrix.cols() != f.domain.ambient_dim())
    throw std::invalid_argument("filtered map has the wrong shape");
  if (!f.is_filtered())
    throw NotFiltered("map does not preserve the filtration");
  GradedRealization dom(f.domain), cod(f.codomain);
  std::map<int, Mat> blocks;
  for (int j = dom.lo(); j <= dom.hi(); ++j) {
    int dj = dom.dim(j);
    int cj = (j >= cod.lo() && j <= cod.hi()) ? cod.dim(j) : 0;
    Mat block(cj, dj);
    if (cj > 0)
      for (int b = 0; b < dj; ++b) {
        Vec coords = cod.project(j, f.matrix * dom.layer_basis(j).row(b));
        for (int r = 0; r < cj; ++r) block.at(r, b) = coords[r];
      }
    blocks.emplace(j, std::move(block));
  }
  return GradedMap{std::move(dom), std::move(cod), std::move(blocks)};
}

Mat GradedMap::flat() const {
  Mat out(codomain.total_dim(), domain.total_dim());
  for (const auto& [j, block] : blocks) {
    if (block.rows() == 0 || block.cols() == 0) continue;
    int ro = codomain.offset(j), co = domain.offset(j);
    for (int r = 0; r < block.rows(); ++r)
      for (int c = 0; c < block.cols(); ++c) out.at(ro + r, co + c) = block.at(r, c);
  }
  return out;
}

GrSubspace gr_subspace(const FiltrationSpec& flag, const Subspace& sub) {
  if (sub.ambient() != flag.ambient_dim())
    throw std::invalid_argument("subspace is not in the filtered space");
  GradedRealization real(flag);
  GradedSpace space;
  std::map<int, Mat> layer_bases;
  std::vector<Vec> flat_rows;
  for (int j = real.lo(); j <= real.hi(); ++j) {
    Subspace sj = sub.intersect(flag.step(j));
    std::vector<Vec> coords;
    for (int r = 0; r < sj.dim(); ++r)
      coords.push_back(real.project(j, sj.basis_vector(r)));
    Subspace layer = Subspace::span(coords, real.dim(j));
    if (layer.dim() == 0) continue;
    space.components[j] = layer.dim();
    layer_bases.emplace(j, layer.basis());
    for (int r = 0; r < layer.dim(); ++r) {
      Vec flat(real.total_dim(), Rat(0));
      for (int t = 0; t < real.dim(j); ++t)
        flat[real.offset(j) + t] = layer.basis().at(r, t);
      flat_rows.push_back(std::move(flat));
    }
  }
  return GrSubspace{std::move(space), std::move(layer_bases),
                    Subspace::span(flat_rows, real.total_dim())};
}

FiltrationSpec hom_filtration(const FiltrationSpec& a, const FiltrationSpec& b) {
  int da = a.ambient_dim(), db = b.ambient_dim();
  int n = db * da;  // X stored row-major as a db x da matrix
  if (n == 0) return FiltrationSpec(0, {});
  std::vector<std::pair<int, Subspace>> steps;
  for (int k = b.lo() - a.hi(); k <= b.hi() - a.lo(); ++k) {
    std::vector<Vec> rows;
    for (int j = a.lo(); j <= a.hi(); ++j) {
      const Subspace& src = a.step(j);
      const Subspace& dst = b.step(j + k);
      if (dst.is_full()) continue;
      Mat fd = dst.defining_equations();
      for (int vi = 0; vi < src.dim(); ++vi) {
        Vec v = src.basis_vector(vi);
        for (int r = 0; r < fd.rows(); ++r) {
          Vec row(n, Rat(0));
          for (int p = 0; p < db; ++p) {
            if (fd.at(r, p).is_zero()) continue;
            for (int q = 0; q < da; ++q)
              if (!v[q].is_zero()) row[p * da + q] = fd.at(r, p) * v[q];
          }
          rows.push_back(std::move(row));
        }
      }
    }
    steps.emplace_back(k, kernel(Mat::from_rows(rows, n)));
  }
  return FiltrationSpec(n, std::move(steps));
}

FiltrationSpec gl_filtration(const FiltrationSpec& flag) {
  return hom_filtration(flag, flag);
}

FiltrationSpec direct_sum_filtration(const std::vector<FiltrationSpec>& parts) {
  int total = 0;
  for (const auto& p : parts) total += p.ambient_dim();
  if (total == 0) return FiltrationSpec(0, {});
  int jlo = 0, jhi = -1;
  bool first = true;
  for (const auto& p : parts) {
    if (p.ambient_dim() == 0) continue;
    jlo = first ? p.lo() : std::min(jlo, p.lo());
    jhi = first ? p.hi() : std::max(jhi, p.hi());
    first = false;
  }
  std::vector<std::pair<int, Subspace>> steps;
  for (int j = jlo; j <= jhi; ++j) {
    std::vector<Vec> rows;
    int off = 0;
    for (const auto& p : parts) {
      const Subspace& s = p.step(j);
      for (int r = 0; r < s.dim(); ++r) {
        Vec row(total, Rat(0));
        Vec v = s.basis_vector(r);
        for (int c = 0; c < p.ambient_dim(); ++c) row[off + c] = v[c];
        rows.push_back(std::move(row));
      }
      off += p.ambient_dim();
    }
    steps.emplace_back(j, Subspace::span(rows, total));
  }
  return FiltrationSpec(total, std::move(steps));
}

FiltrationSpec tensor_filtration(const FiltrationSpec& a, const FiltrationSpec& b) {
  int da = a.ambient_dim(), db = b.ambient_dim();
  int n = da * db;
  if (n == 0) return FiltrationSpec(0, {});
  std::vector<std::pair<int, Subspace>> steps;
  for (int j = a.lo() + b.lo() - 1; j <= a.hi() + b.hi() - 1; ++j) {
    std::vector<Vec> rows;
    for (int j1 = a.lo(); j1 <= a.hi(); ++j1) {
      const Subspace& s = a.step(j1);
      const Subspace& t = b.step(j + 1 - j1);
      for (int u = 0; u < s.dim(); ++u)
        for (int v = 0; v < t.dim(); ++v) {
          Vec row(n, Rat(0));
          Vec su = s.basis_vector(u), tv = t.basis_vector(v);
          for (int p = 0; p < da; ++p) {
            if (su[p].is_zero()) continue;
            for (int q = 0; q < db; ++q)
              if (!tv[q].is_zero()) row[p * db + q] = su[p] * tv[q];
          }
          rows.push_back(std::move(row));
        }
    }
    steps.emplace_back(j, Subspace::span(rows, n));
  }
  return FiltrationSpec(n, std::move(steps));
}

LemmaAbcReport lemma_abc_check(const FilteredMap& f, const Subspace& c) {
  if (c.ambient() != f.codomain.ambient_dim())
    throw std::invalid_argument("complement candidate is not in the codomain");
  GradedMap g = gr_map(f);
  Mat gf = g.flat();

  Subspace ker_f = kernel(f.matrix);
  GrSubspace gr_ker = gr_subspace(f.domain, ker_f);
  Subspace ker_gr = kernel(gf);
  bool s1 = ker_gr.contains(gr_ker.flat);

  GrSubspace gr_c = gr_subspace(f.codomain, c);
  Subspace im_gr = col_space(gf);
  bool hyp =
      gr_c.flat.intersect(im_gr).is_zero() && (gr_c.flat + im_gr).is_full();

  bool s2 = true, s3 = true;
  if (hyp) {
    s2 = (c + col_space(f.matrix)).is_full();
    Subspace preimage = kernel(c.defining_equations() * f.matrix);
    GrSubspace gr_pre = gr_subspace(f.domain, preimage);
    s3 = (gr_pre.flat == ker_gr);
  }
  return LemmaAbcReport{hyp, s1, s2, s3};
}

std::vector<FiltrationSpec> induced_symbol_filtration(const NilpotentSymbol& m,
                                                      const FiltrationSpec& flag) {
  if (flag.ambient_dim() != m.dim(-1))
    throw std::invalid_argument("flag must filter the top layer of the symbol");
  std::vector<FiltrationSpec> out;
  out.push_back(flag);
  for (int i = 2; i <= m.depth(); ++i) {
    const FiltrationSpec& prev = out.back();
    int di = m.dim(-i);
    if (di == 0) {
      out.emplace_back(0, std::vector<std::pair<int, Subspace>>{});
      continue;
    }
    std::vector<std::pair<int, Subspace>> steps;
    for (int j = flag.lo() + prev.lo(); j <= flag.hi() + prev.hi(); ++j) {
      std::vector<Vec> rows;
      for (int j1 = flag.lo(); j1 <= flag.hi(); ++j1) {
        const Subspace& s1 = flag.step(j1);
        const Subspace& s2 = prev.step(j - j1);
        for (int u = 0; u < s1.dim(); ++u)
          for (int v = 0; v < s2.dim(); ++v)
            rows.push_back(m.bracket_vectors(-1, s1.basis_vector(u), -(i - 1),
                                             s2.basis_vector(v)));
      }
      steps.emplace_back(j, Subspace::span(rows, di));
    }
    if (steps.empty() || !steps.front().second.is_full())
      throw std::invalid_argument(
          "induced filtration needs a fundamental symbol: deeper layers must "
          "be spanned by brackets with the top layer");
    out.emplace_back(di, std::move(steps));
  }
  return out;
}

namespace {

// Weight and in-layer index of a flat graded coordinate.
std::pair<int, int> locate(const GradedRealization& real, int flat_index) {
  for (int j = real.lo(); j <= real.hi(); ++j)
    if (flat_index < real.offset(j) + real.dim(j))
      return {j, flat_index - real.offset(j)};
  throw std::out_of_range("flat graded index out of range");
}

}  // namespace

BigradedGr bigraded_gr(const NilpotentSymbol& m, const FiltrationSpec& flag) {
  auto filts = induced_symbol_filtration(m, flag);
  int depth = m.depth();
  std::vector<GradedRealization> real;
  real.reserve(filts.size());
  for (const auto& f : filts) real.emplace_back(f);

  std::map<std::pair<int, int>, int> bidim;
  for (int i = 1; i <= depth; ++i)
    for (int j = real[i - 1].lo(); j <= real[i - 1].hi(); ++j)
      if (real[i - 1].dim(j) > 0) bidim[{-i, j}] = real[i - 1].dim(j);

  // Structure constants in flat layer coordinates: bracket representatives
  // of bidegrees (i1, j1), (i2, j2), then project at weight j1 + j2.
  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (int i1 = 1; i1 <= depth; ++i1)
    for (int i2 = i1; i1 + i2 <= depth; ++i2) {
      const GradedRealization& rt = real[i1 + i2 - 1];
      for (int a = 0; a < m.dim(-i1); ++a) {
        int b0 = (i1 == i2) ? a + 1 : 0;
        for (int b = b0; b < m.dim(-i2); ++b) {
          auto [j1, idx1] = locate(real[i1 - 1], a);
          auto [j2, idx2] = locate(real[i2 - 1], b);
          Vec br = m.bracket_vectors(-i1, real[i1 - 1].layer_basis(j1).row(idx1),
                                     -i2, real[i2 - 1].layer_basis(j2).row(idx2));
          int jt = j1 + j2;
          Vec flat(m.dim(-(i1 + i2)), Rat(0));
          if (jt >= rt.lo() && jt <= rt.hi()) {
            Vec coords = rt.project(jt, br);
            for (size_t t = 0; t < coords.size(); ++t)
              flat[rt.offset(jt) + int(t)] = coords[t];
          }
          if (!is_zero(flat)) entries.push_back({-i1, a, -i2, b, std::move(flat)});
        }
      }
    }
  NilpotentSymbol gr(m.layer_dims(), entries);

  // Witness: flat identification on the top layer, extended through
  // brackets using fundamentality of m.
  std::vector<Mat> witness;
  witness.push_back(real[0].flatten_matrix());
  bool invertible = true;
  for (int i = 2; i <= depth; ++i) {
    int di = m.dim(-i);
    std::vector<Vec> gens;
    std::vector<std::pair<int, int>> gen_idx;
    for (int a = 0; a < m.dim(-1); ++a)
      for (int b = 0; b < m.dim(-(i - 1)); ++b) {
        gens.push_back(m.bracket(-1, a, -(i - 1), b));
        gen_idx.emplace_back(a, b);
      }
    Mat gmat = Mat::from_rows(gens, di);
    Mat w(di, di);
    for (int c = 0; c < di; ++c) {
      AffineSolution sol = solve_affine(gmat.transpose(), unit_vec(di, c));
      if (!sol.solvable)
        throw std::logic_error("fundamental symbol with unspanned layer");
      Vec img(di, Rat(0));
      for (size_t g = 0; g < gens.size(); ++g) {
        if (sol.particular[g].is_zero()) continue;
        auto [a, b] = gen_idx[g];
        axpy(sol.particular[g],
             gr.bracket_vectors(-1, witness[0].col(a), -(i - 1),
                                witness[i - 2].col(b)),
             img);
      }
      for (int r = 0; r < di; ++r) w.at(r, c) = img[r];
    }
    if (rank(w) < di) invertible = false;
    witness.push_back(std::move(w));
  }

  bool hom = true;
  for (int i1 = 1; i1 <= depth && hom; ++i1)
    for (int i2 = i1; i1 + i2 <= depth && hom; ++i2)
      for (int a = 0; a < m.dim(-i1) && hom; ++a)
        for (int b = 0; b < m.dim(-i2) && hom; ++b) {
          Vec lhs = witness[i1 + i2 - 1] * m.bracket(-i1, a, -i2, b);
          Vec rhs = gr.bracket_vectors(-i1, witness[i1 - 1].col(a), -i2,
                                       witness[i2 - 1].col(b));
          if (lhs != rhs) hom = false;
        }

  return BigradedGr{std::move(gr), std::move(bidim), std::move(witness), hom,
                    invertible};
}

}  // namespace tanaka
