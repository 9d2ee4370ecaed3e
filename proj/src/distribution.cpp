#include "tanaka/distribution.hpp"

#include <stdexcept>
#include <utility>

#include "tanaka/errors.hpp"
#include "tanaka/matrix.hpp"

namespace tanaka {

PolyVectorField::PolyVectorField(int n, std::vector<Polynomial> comps)
    : n_coords(n), components(std::move(comps)) {
  if (n < 1) throw std::invalid_argument("vector field needs at least one coordinate");
  if (int(components.size()) != n)
    throw std::invalid_argument("vector field needs one component per coordinate");
  for (const Polynomial& p : components)
    if (p.n_vars() != n)
      throw std::invalid_argument("vector field component uses the wrong variable count");
}

PolyVectorField PolyVectorField::parse(int n, const std::vector<std::string>& comps) {
  std::vector<Polynomial> out;
  out.reserve(comps.size());
  for (const std::string& text : comps) out.push_back(Polynomial::parse(text, n));
  return PolyVectorField(n, std::move(out));
}

Vec PolyVectorField::evaluate(const Vec& point) const {
  Vec out(n_coords);
  for (int k = 0; k < n_coords; ++k) out[k] = components[k].evaluate(point);
  return out;
}

bool PolyVectorField::is_zero() const {
  for (const Polynomial& p : components)
    if (!p.is_zero()) return false;
  return true;
}

PolyVectorField bracket(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.n_coords != y.n_coords)
    throw std::invalid_argument("bracket needs fields on the same coordinates");
  int n = x.n_coords;
  std::vector<Polynomial> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    Polynomial comp(n);
    for (int j = 0; j < n; ++j) {
      comp = comp + x.components[j] * y.components[k].derivative(j);
      comp = comp - y.components[j] * x.components[k].derivative(j);
    }
    out.push_back(std::move(comp));
  }
  return PolyVectorField(n, std::move(out));
}

DistributionSpec::DistributionSpec(int n, std::vector<PolyVectorField> spanning)
    : n_coords(n), fields(std::move(spanning)) {
  if (fields.empty())
    throw std::invalid_argument("distribution needs at least one spanning field");
  for (const PolyVectorField& f : fields)
    if (f.n_coords != n)
      throw std::invalid_argument("distribution fields must share the coordinate count");
}

namespace {

// Flag steps at a point together with the iterated-bracket sections behind
// each level and whether the flag stopped on its own (stabilized or full)
// rather than at the depth cap.
struct FlagData {
  std::vector<Subspace> steps;
  std::vector<std::vector<PolyVectorField>> levels;
  bool complete = false;
};

bool same_up_to_sign(const PolyVectorField& a, const PolyVectorField& b) {
  bool plus = true, minus = true;
  for (int k = 0; k < a.n_coords; ++k) {
    if (a.components[k] != b.components[k]) plus = false;
    if (a.components[k] != -b.components[k]) minus = false;
  }
  return plus || minus;
}

// Left-normed iterated brackets level by level, with pointwise spans.
// Identically zero brackets and duplicates (up to sign) are dropped; they
// contribute nothing new at any point.
FlagData flag_data(const DistributionSpec& d, const Vec& point, int depth_cap) {
  int n = d.n_coords;
  if (int(point.size()) != n)
    throw std::invalid_argument("point has the wrong dimension");
  if (depth_cap < 1) throw std::invalid_argument("depth_cap must be at least 1");

  FlagData out;
  std::vector<Vec> rows;
  for (const PolyVectorField& f : d.fields) rows.push_back(f.evaluate(point));
  Subspace top = Subspace::span(rows, n);
  if (top.dim() != int(d.fields.size()))
    throw DependentAtPoint("spanning fields are linearly dependent at the point");
  out.steps.push_back(top);
  out.levels.push_back(d.fields);
  out.complete = top.is_full();

  while (!out.complete && int(out.steps.size()) < depth_cap) {
    std::vector<PolyVectorField> next;
    for (const PolyVectorField& f : d.fields) {
      for (const PolyVectorField& s : out.levels.back()) {
        PolyVectorField b = bracket(f, s);
        if (b.is_zero()) continue;
        bool seen = false;
        for (const PolyVectorField& known : next)
          if (same_up_to_sign(b, known)) {
            seen = true;
            break;
          }
        if (!seen) next.push_back(std::move(b));
      }
    }
    Mat stacked = out.steps.back().basis();
    for (const PolyVectorField& s : next)
      stacked = stacked.vstack(Mat::from_rows({s.evaluate(point)}, n));
    Subspace grown = Subspace::span(stacked);
    if (grown.dim() == out.steps.back().dim()) {
      out.complete = true;
      break;
    }
    out.steps.push_back(grown);
    out.levels.push_back(std::move(next));
    out.complete = grown.is_full();
  }
  return out;
}

std::vector<int> cumulative_dims(const FlagData& f) {
  std::vector<int> out;
  for (const Subspace& s : f.steps) out.push_back(s.dim());
  return out;
}

}  // namespace

std::vector<Subspace> weak_derived_flag(const DistributionSpec& d, const Vec& point,
                                        int depth_cap) {
  return flag_data(d, point, depth_cap).steps;
}

NilpotentSymbol symbol_at(const DistributionSpec& d, const Vec& point,
                          const std::vector<Vec>& sample_points, int depth_cap) {
  FlagData base = flag_data(d, point, depth_cap);
  if (!base.complete)
    throw DepthCapExceeded("weak derived flag is still growing at the depth cap");
  std::vector<int> cum = cumulative_dims(base);
  for (const Vec& q : sample_points) {
    FlagData probe = flag_data(d, q, depth_cap);
    if (!probe.complete || cumulative_dims(probe) != cum)
      throw NonConstantRank("weak derived flag dimensions differ at a sample point");
  }

  int n = d.n_coords;
  int depth = int(base.steps.size());
  std::vector<int> dims(depth);
  for (int j = 0; j < depth; ++j) dims[j] = cum[j] - (j == 0 ? 0 : cum[j - 1]);

  // Adapted quotient bases via the complement rule, plus one representative
  // section per basis vector: a combination of iterated brackets whose value
  // at the point hits the basis vector modulo the previous step.
  std::vector<Mat> layer_basis(depth, Mat(0, n));
  std::vector<std::vector<PolyVectorField>> reps(depth);
  for (int j = 0; j < depth; ++j) {
    Subspace prev = j == 0 ? Subspace::zero(n) : base.steps[j - 1];
    layer_basis[j] = complement_in(prev, base.steps[j]).basis();
    const std::vector<PolyVectorField>& sections = base.levels[j];
    std::vector<Vec> cols;
    for (const PolyVectorField& s : sections) cols.push_back(s.evaluate(point));
    for (int r = 0; r < prev.basis().rows(); ++r) cols.push_back(prev.basis().row(r));
    Mat system = Mat::from_rows(cols, n).transpose();
    for (int r = 0; r < layer_basis[j].rows(); ++r) {
      AffineSolution sol = solve_affine(system, layer_basis[j].row(r));
      if (!sol.solvable)
        throw std::logic_error("complement basis escaped its own flag step");
      PolyVectorField rep(n, std::vector<Polynomial>(n, Polynomial(n)));
      for (size_t s = 0; s < sections.size(); ++s) {
        if (sol.particular[s].is_zero()) continue;
        for (int k = 0; k < n; ++k)
          rep.components[k] =
              rep.components[k] + sol.particular[s] * sections[s].components[k];
      }
      reps[j].push_back(std::move(rep));
    }
  }

  // Structure constants: bracket the representative sections pairwise and
  // read the degree -(i+j) block of the value in the adapted basis.
  Mat adapted(0, n);
  for (int j = 0; j < depth; ++j) adapted = adapted.vstack(layer_basis[j]);
  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (int i = 1; i <= depth; ++i) {
    for (int j = i; j <= depth; ++j) {
      for (size_t a = 0; a < reps[i - 1].size(); ++a) {
        for (size_t b = (i == j ? a + 1 : size_t(0)); b < reps[j - 1].size(); ++b) {
          Vec value = bracket(reps[i - 1][a], reps[j - 1][b]).evaluate(point);
          AffineSolution sol = solve_affine(adapted.transpose(), value);
          if (!sol.solvable)
            throw NonConstantRank(
                "a section bracket leaves the weak derived flag at the point");
          int target = i + j;
          if (target > depth) {
            // The symbol has no component that deep, and the quotient
            // there is zero, so solvability over the stabilized flag is
            // the whole consistency requirement.
            continue;
          }
          int offset = cum[target - 2];
          Vec coords(dims[target - 1]);
          for (int r = 0; r < dims[target - 1]; ++r)
            coords[r] = sol.particular[offset + r];
          // Entries above the target level would contradict the filtration.
          for (int r = offset + dims[target - 1]; r < int(sol.particular.size()); ++r)
            if (!sol.particular[r].is_zero())
              throw NonConstantRank(
                  "a section bracket leaves the weak derived flag at the point");
          if (!is_zero(coords))
            entries.push_back({-i, int(a), -j, int(b), std::move(coords)});
        }
      }
    }
  }
  NilpotentSymbol sym(dims, entries);
  if (!sym.validate().ok())
    throw NonConstantRank(
        "quotient brackets fail the graded Lie checks; the constancy hypothesis fails");
  return sym;
}

}  // namespace tanaka
