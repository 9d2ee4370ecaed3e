#include "tanaka/flag_prolong.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

/// The flag carried into the flat graded coordinates of its realization,
/// where every step is a span of trailing coordinates.
FiltrationSpec coordinate_flag(const GradedRealization& real) {
  int n = real.total_dim();
  std::vector<std::pair<int, Subspace>> steps;
  for (int j = real.lo(); j <= real.hi(); ++j) {
    std::vector<Vec> rows;
    for (int c = real.offset(j); c < n; ++c) rows.push_back(unit_vec(n, c));
    steps.emplace_back(j, Subspace::span(rows, n));
  }
  return FiltrationSpec(n, std::move(steps));
}

/// Degree of each flat graded coordinate of a realization.
std::vector<int> coordinate_degrees(const GradedRealization& real) {
  std::vector<int> deg(real.total_dim(), 0);
  for (int j = real.lo(); j <= real.hi(); ++j)
    for (int t = 0; t < real.dim(j); ++t) deg[size_t(real.offset(j) + t)] = j;
  return deg;
}

}  // namespace

FlagSymbol::FlagSymbol(FiltrationSpec flag, Subalgebra0 ambient,
                       std::vector<Mat> delta, DeltaMode mode)
    : flag_(std::move(flag)),
      real_(flag_),
      ambient_(std::move(ambient)),
      mode_(mode),
      delta_mats_(std::move(delta)),
      delta_span_(Subspace::zero(0)) {
  int n = flag_.ambient_dim();
  if (ambient_.parent().dim(-1) != n)
    throw std::invalid_argument("flag is not on g^-1 of the ambient's parent");
  if (mode_ == DeltaMode::FixedElement && delta_mats_.size() != 1)
    throw std::invalid_argument("FixedElement mode needs exactly one matrix");
  for (const Mat& d : delta_mats_)
    if (d.rows() != n || d.cols() != n)
      throw std::invalid_argument("delta matrix has the wrong size");

  // Conjugate the ambient span into flat graded coordinates and push it
  // through the gr functor of the induced filtration on gl. Each layer is
  // lifted back to matrices, which come out pure of their degree because
  // the carried flag is a chain of coordinate subspaces.
  const Mat& f = real_.flatten_matrix();
  Mat finv = inverse(f);
  const Subspace& top = ambient_.span_on_gminus1();
  std::vector<Vec> conj_rows;
  for (int r = 0; r < top.dim(); ++r)
    conj_rows.push_back((f * Mat::unvec(top.basis_vector(r), n, n) * finv).vec());
  Subspace conj = Subspace::span(conj_rows, n * n);

  FiltrationSpec gl = gl_filtration(coordinate_flag(real_));
  GradedRealization glreal(gl);
  GrSubspace gr = gr_subspace(gl, conj);
  ambient_graded_ = gr.space;
  std::vector<int> deg = coordinate_degrees(real_);
  for (const auto& [k, layer] : gr.layer_bases) {
    std::vector<Vec> rows;
    for (int r = 0; r < layer.rows(); ++r) {
      Vec lifted = glreal.lift(k, layer.row(r));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!lifted[size_t(a * n + b)].is_zero() && deg[size_t(a)] - deg[size_t(b)] != k)
            throw std::logic_error("graded ambient representative is not pure");
      rows.push_back(std::move(lifted));
    }
    ambient_layers_.emplace(k, Mat::from_rows(rows, n * n));
  }

  Subspace degree_minus_one = Subspace::span(ambient_component(-1));
  std::vector<Vec> delta_rows;
  for (const Mat& d : delta_mats_) {
    if (!degree_minus_one.contains(d.vec()))
      throw NotContained("delta is not inside degree -1 of the graded ambient");
    delta_rows.push_back(d.vec());
  }
  for (size_t a = 0; a < delta_mats_.size(); ++a)
    for (size_t b = a + 1; b < delta_mats_.size(); ++b)
      if (!commutator(delta_mats_[a], delta_mats_[b]).is_zero())
        throw NotASubalgebra("flag symbol must be commutative");
  delta_span_ = Subspace::span(delta_rows, n * n);
}

const Mat& FlagSymbol::fixed_element() const {
  if (mode_ != DeltaMode::FixedElement)
    throw std::logic_error("flag symbol has no fixed element in Line mode");
  return delta_mats_.front();
}

Mat FlagSymbol::ambient_component(int k) const {
  auto it = ambient_layers_.find(k);
  int n = flag_.ambient_dim();
  return it == ambient_layers_.end() ? Mat(0, n * n) : it->second;
}

int FlagProlongation::dim(int k) const {
  if (k < -1) return 0;
  auto it = comps_.find(k);
  if (it != comps_.end()) return it->second.rows();
  if (status_ == ProlongStatus::Capped)
    throw std::out_of_range("degree beyond the cap of a capped flag prolongation");
  return 0;
}

int FlagProlongation::total_dim() const {
  int t = 0;
  for (const auto& [k, m] : comps_) t += m.rows();
  return t;
}

bool FlagProlongation::closed_under_brackets() const {
  int nn = n_ * n_;
  std::map<int, Subspace> spans;
  for (const auto& [k, m] : comps_) spans.emplace(k, Subspace::span(m));
  Subspace zero = Subspace::zero(nn);
  for (const auto& [j, mj] : comps_) {
    for (const auto& [k, mk] : comps_) {
      if (j > k) continue;
      int d = j + k;
      const Subspace* tgt = &zero;
      auto it = spans.find(d);
      if (it != spans.end()) {
        tgt = &it->second;
      } else if (d > max_degree_ && status_ == ProlongStatus::Capped) {
        continue;  // nothing is claimed beyond the cap
      }
      for (int r = 0; r < mj.rows(); ++r) {
        Mat x = Mat::unvec(mj.row(r), n_, n_);
        for (int s = 0; s < mk.rows(); ++s) {
          Mat y = Mat::unvec(mk.row(s), n_, n_);
          if (!tgt->contains(commutator(x, y).vec())) return false;
        }
      }
    }
  }
  return true;
}

namespace {

/// Solve one prolongation degree: the subspace of span(cand rows) whose
/// bracket with every generator lands in `target`. Unknowns are the
/// coefficients over the candidate rows; each generator contributes the
/// defining equations of the target applied to the commutator.
Mat solve_step(const Mat& cand, int n, const std::vector<Mat>& gens,
               const Subspace& target) {
  int nn = n * n;
  if (cand.rows() == 0) return Mat(0, nn);
  Mat eqs = target.defining_equations();
  Mat sys(int(gens.size()) * eqs.rows(), cand.rows());
  for (int a = 0; a < cand.rows(); ++a) {
    Mat x = Mat::unvec(cand.row(a), n, n);
    for (size_t b = 0; b < gens.size(); ++b) {
      Vec w = eqs * commutator(x, gens[b]).vec();
      for (int r = 0; r < eqs.rows(); ++r)
        sys.at(int(b) * eqs.rows() + r, a) = w[size_t(r)];
    }
  }
  Mat coeffs = kernel_basis(sys);
  std::vector<Vec> rows;
  for (int t = 0; t < coeffs.rows(); ++t) {
    Vec v(size_t(nn), Rat(0));
    for (int a = 0; a < cand.rows(); ++a)
      if (!coeffs.at(t, a).is_zero()) axpy(coeffs.at(t, a), cand.row(a), v);
    rows.push_back(std::move(v));
  }
  return Subspace::span(rows, nn).basis();
}

struct ProlongParts {
  ProlongStatus status = ProlongStatus::Terminated;
  std::map<int, Mat> comps;
};

ProlongParts prolong_core(const FlagSymbol& sym, int cap, bool parameterized) {
  if (cap < 0) throw std::invalid_argument("max_degree must be nonnegative");
  if (parameterized && sym.mode() != DeltaMode::FixedElement)
    throw std::invalid_argument("parameterized prolongation needs a fixed element");
  int n = sym.flag().ambient_dim();
  int nn = n * n;

  ProlongParts out;
  out.comps.emplace(-1, sym.delta().basis());

  std::vector<Mat> gens = parameterized
                              ? std::vector<Mat>{sym.fixed_element()}
                              : sym.delta_matrices();
  Subspace target = parameterized ? Subspace::zero(nn) : sym.delta();

  const auto& layers = sym.ambient_graded().components;
  int hi = layers.empty() ? -1 : layers.rbegin()->first;
  int top = std::min(cap, hi);
  int zero_run = 0;
  bool stopped_early = false;
  for (int k = 0; k <= top; ++k) {
    Mat basis = solve_step(sym.ambient_component(k), n, gens, target);
    zero_run = basis.rows() == 0 ? zero_run + 1 : 0;
    target = Subspace::span(basis);
    out.comps.emplace(k, std::move(basis));
    if (zero_run >= 2) {
      stopped_early = true;
      break;
    }
  }
  out.status = (!stopped_early && cap < hi) ? ProlongStatus::Capped
                                            : ProlongStatus::Terminated;
  return out;
}

}  // namespace

FlagProlongation::FlagProlongation(int n, ProlongStatus status,
                                   std::map<int, Mat> comps)
    : n_(n), status_(status), comps_(std::move(comps)) {
  max_degree_ = comps_.rbegin()->first;
  terminated_at_ = -2;
  for (const auto& [k, m] : comps_)
    if (m.rows() > 0) terminated_at_ = k;
  if (!closed_under_brackets())
    throw std::logic_error("flag prolongation is not closed under brackets");
}

FlagProlongation flag_prolong(const FlagSymbol& sym, int max_degree) {
  ProlongParts parts = prolong_core(sym, max_degree, false);
  return FlagProlongation(sym.flag().ambient_dim(), parts.status,
                          std::move(parts.comps));
}

FlagProlongation flag_prolong_param(const FlagSymbol& sym, int max_degree) {
  ProlongParts parts = prolong_core(sym, max_degree, true);
  return FlagProlongation(sym.flag().ambient_dim(), parts.status,
                          std::move(parts.comps));
}

NilpotentSymbol heisenberg_from_pairing(const Mat& omega) {
  int n = omega.rows();
  if (omega.cols() != n || n == 0)
    throw std::invalid_argument("pairing must be square and nonempty");
  if (!(omega.transpose() == -omega))
    throw std::invalid_argument("pairing must be antisymmetric");
  if (rank(omega) != n)
    throw std::invalid_argument("pairing must be nondegenerate");
  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!omega.at(a, b).is_zero())
        entries.push_back({-1, a, -1, b, Vec{omega.at(a, b)}});
  return NilpotentSymbol({n, 1}, entries);
}

FlagSymbol canonical_flag_symbol(const GradedEndomorphism& datum, DeltaMode mode) {
  FiltrationSpec flag = datum.canonical_flag();
  std::vector<Mat> delta{datum.matrix};
  if (datum.pairing.has_value()) {
    if (mode == DeltaMode::FixedElement) {
      NilpotentSymbol m = build_commutative(datum.total_dim());
      return FlagSymbol(std::move(flag), restrict_to_sp(m, *datum.pairing),
                        std::move(delta), mode);
    }
    NilpotentSymbol m = heisenberg_from_pairing(*datum.pairing);
    return FlagSymbol(std::move(flag), restrict_to_csp(m, *datum.pairing),
                      std::move(delta), mode);
  }
  NilpotentSymbol m = build_commutative(datum.total_dim());
  return FlagSymbol(std::move(flag), derivations0(m), std::move(delta), mode);
}

Subalgebra0 to_subalgebra0(const FlagSymbol& sym, const FlagProlongation& u) {
  int n = sym.flag().ambient_dim();
  if (u.matrix_dim() != n)
    throw std::invalid_argument("flag prolongation does not match the symbol");
  const Mat& f = sym.realization().flatten_matrix();
  Mat finv = inverse(f);
  std::vector<Mat> mats;
  for (int k = -1; k <= u.max_degree(); ++k) {
    const Mat& comp = u.component(k);
    for (int r = 0; r < comp.rows(); ++r)
      mats.push_back(finv * Mat::unvec(comp.row(r), n, n) * f);
  }
  Subalgebra0 out = restrict_to_custom(sym.ambient().parent(), mats);
  if (out.dim() != u.total_dim())
    throw NotASubalgebra(
        "flag prolongation does not transport to degree-zero derivations");
  return out;
}

}  // namespace tanaka
