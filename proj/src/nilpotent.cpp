#include "tanaka/nilpotent.hpp"

#include "tanaka/subspace.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <string>

namespace tanaka {

namespace {

std::string label(int i, int a) {
  return "(" + std::to_string(i) + "," + std::to_string(a) + ")";
}

}  // namespace

NilpotentSymbol::NilpotentSymbol(std::vector<int> dims,
                                 const std::vector<BracketEntry>& entries)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("symbol needs at least degree -1");
  for (int d : dims_)
    if (d < 0) throw std::invalid_argument("negative layer dimension");
  if (dims_[0] == 0) throw std::invalid_argument("top layer g^-1 must be nonzero");

  int mu = depth();
  table_.resize(mu);
  for (int i = 1; i <= mu; ++i) {
    table_[i - 1].resize(mu);
    for (int j = 1; j <= mu; ++j) {
      int target = (i + j <= mu) ? dims_[i + j - 1] : 0;
      table_[i - 1][j - 1].assign(
          dims_[i - 1], std::vector<Vec>(dims_[j - 1], Vec(target, Rat(0))));
    }
  }

  // Fill from declared entries, enforcing antisymmetry as we go.
  std::map<std::tuple<int, int, int, int>, bool> seen;
  auto put = [&](int i, int a, int j, int b, const Vec& value) {
    if (i > -1 || i < -mu || j > -1 || j < -mu)
      throw std::invalid_argument("bracket entry degree out of range");
    if (a < 0 || a >= dim(i) || b < 0 || b >= dim(j))
      throw std::invalid_argument("bracket entry index out of range");
    int target = dim(i + j);
    if (int(value.size()) != target)
      throw std::invalid_argument("bracket value has wrong target dimension for " +
                                  label(i, a) + "," + label(j, b));
    Vec& slot = table_[-i - 1][-j - 1][a][b];
    if (seen[{i, a, j, b}] && !(slot == value))
      throw std::invalid_argument("conflicting bracket entries for " + label(i, a) +
                                  "," + label(j, b));
    seen[{i, a, j, b}] = true;
    slot = value;
  };
  for (const auto& e : entries) {
    if (e.i == e.j && e.a == e.b && !is_zero(e.value))
      throw std::invalid_argument("nonzero bracket of a basis vector with itself");
    put(e.i, e.a, e.j, e.b, e.value);
    Vec neg = e.value;
    for (Rat& x : neg) x = -x;
    put(e.j, e.b, e.i, e.a, neg);
  }
}

int NilpotentSymbol::dim(int degree) const {
  if (degree > -1 || degree < -depth()) return 0;
  return dims_[-degree - 1];
}

int NilpotentSymbol::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

const Vec& NilpotentSymbol::bracket(int i, int a, int j, int b) const {
  assert(-depth() <= i && i <= -1 && -depth() <= j && j <= -1);
  assert(0 <= a && a < dim(i) && 0 <= b && b < dim(j));
  return table_[-i - 1][-j - 1][a][b];
}

Vec NilpotentSymbol::bracket_vectors(int i, const Vec& x, int j, const Vec& y) const {
  assert(int(x.size()) == dim(i) && int(y.size()) == dim(j));
  Vec out(dim(i + j), Rat(0));
  for (int a = 0; a < dim(i); ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < dim(j); ++b) {
      if (y[b].is_zero()) continue;
      axpy(x[a] * y[b], bracket(i, a, j, b), out);
    }
  }
  return out;
}

SymbolChecks NilpotentSymbol::validate() const {
  SymbolChecks c{true, true, true};
  int mu = depth();

  // Jacobi on all basis triples: [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0.
  for (int i = -mu; i <= -1 && c.jacobi; ++i)
    for (int j = -mu; j <= -1 && c.jacobi; ++j)
      for (int k = -mu; k <= -1 && c.jacobi; ++k) {
        if (i + j + k < -mu) continue;  // all three terms vanish structurally
        for (int a = 0; a < dim(i) && c.jacobi; ++a)
          for (int b = 0; b < dim(j) && c.jacobi; ++b)
            for (int e = 0; e < dim(k) && c.jacobi; ++e) {
              Vec sum(dim(i + j + k), Rat(0));
              Vec xa = unit_vec(dim(i), a), yb = unit_vec(dim(j), b),
                  ze = unit_vec(dim(k), e);
              axpy(Rat(1), bracket_vectors(i, xa, j + k, bracket(j, b, k, e)), sum);
              axpy(Rat(1), bracket_vectors(j, yb, k + i, bracket(k, e, i, a)), sum);
              axpy(Rat(1), bracket_vectors(k, ze, i + j, bracket(i, a, j, b)), sum);
              if (!is_zero(sum)) c.jacobi = false;
            }
      }

  // Fundamental: g^{-i} = [g^{-1}, g^{-i+1}] for i >= 2.
  for (int i = 2; i <= mu && c.fundamental; ++i) {
    std::vector<Vec> spanned;
    for (int a = 0; a < dim(-1); ++a)
      for (int b = 0; b < dim(-i + 1); ++b) spanned.push_back(bracket(-1, a, -i + 1, b));
    if (Subspace::span(spanned, dim(-i)).dim() != dim(-i)) c.fundamental = false;
  }
  return c;
}

void NilpotentSymbol::set_labels(std::vector<std::vector<std::string>> labels) {
  if (int(labels.size()) != depth())
    throw std::invalid_argument("need one label list per layer");
  for (int i = 1; i <= depth(); ++i)
    if (int(labels[i - 1].size()) != dim(-i))
      throw std::invalid_argument("label count mismatch in layer " +
                                  std::to_string(-i));
  labels_ = std::move(labels);
}

std::string NilpotentSymbol::label(int degree, int index) const {
  if (!labels_.empty()) return labels_[-degree - 1][index];
  return "g" + std::to_string(degree) + "[" + std::to_string(index) + "]";
}

std::optional<Mat> NilpotentSymbol::pairing() const {
  if (depth() != 2 || dim(-2) != 1) return std::nullopt;
  int n = dim(-1);
  Mat omega(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) omega.at(a, b) = bracket(-1, a, -1, b)[0];
  return omega;
}

NilpotentSymbol build_commutative(int n) {
  NilpotentSymbol m({n}, {});
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) names.push_back("e" + std::to_string(a));
  m.set_labels({std::move(names)});
  return m;
}

NilpotentSymbol build_heisenberg(int total_dim) {
  if (total_dim < 3 || total_dim % 2 == 0)
    throw EvenDim("heisenberg algebra needs odd total dimension >= 3, got " +
                  std::to_string(total_dim));
  int k = (total_dim - 1) / 2;
  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (int a = 0; a < k; ++a)
    entries.push_back({-1, a, -1, k + a, Vec{Rat(1)}});
  NilpotentSymbol m({2 * k, 1}, entries);
  std::vector<std::string> top;
  for (int a = 1; a <= k; ++a) top.push_back("x" + std::to_string(a));
  for (int a = 1; a <= k; ++a) top.push_back("y" + std::to_string(a));
  m.set_labels({std::move(top), {"z"}});
  return m;
}

namespace {

// Free Lie algebra machinery on Lyndon words. A Lie monomial is expanded in
// the free associative algebra (noncommutative words); expansions of Lyndon
// bracketings are triangular with the word itself as the lexicographically
// smallest support term, which makes change of basis a simple peel-off.
using Word = std::vector<int>;
using NcPoly = std::map<Word, Rat>;

bool is_lyndon(const Word& w) {
  // w is Lyndon iff it is strictly smaller than all of its proper suffixes.
  for (size_t s = 1; s < w.size(); ++s) {
    Word suf(w.begin() + s, w.end());
    if (!(w < suf)) return false;
  }
  return true;
}

std::vector<Word> lyndon_words(int l, int max_len) {
  // Duval's generation in lexicographic order.
  std::vector<Word> out;
  Word w{0};
  while (true) {
    if (int(w.size()) <= max_len) out.push_back(w);
    Word t;
    while (int(t.size()) < max_len) t.push_back(w[t.size() % w.size()]);
    while (!t.empty() && t.back() == l - 1) t.pop_back();
    if (t.empty()) break;
    ++t.back();
    w = t;
  }
  return out;
}

// Standard factorization w = uv: v is the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w) {
  assert(w.size() >= 2);
  for (size_t s = 1; s < w.size(); ++s) {
    Word suf(w.begin() + s, w.end());
    if (is_lyndon(suf)) return {Word(w.begin(), w.begin() + s), suf};
  }
  throw std::logic_error("lyndon word without standard factorization");
}

NcPoly nc_mul(const NcPoly& p, const NcPoly& q) {
  NcPoly r;
  for (const auto& [u, cu] : p)
    for (const auto& [v, cv] : q) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      Rat& slot = r[uv];
      slot += cu * cv;
      if (slot.is_zero()) r.erase(uv);
    }
  return r;
}

NcPoly nc_sub(NcPoly p, const NcPoly& q) {
  for (const auto& [w, c] : q) {
    Rat& slot = p[w];
    slot -= c;
    if (slot.is_zero()) p.erase(w);
  }
  return p;
}

// Expansion of the standard bracketing of a Lyndon word, memoized.
const NcPoly& expansion(const Word& w, std::map<Word, NcPoly>& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  NcPoly e;
  if (w.size() == 1) {
    e[w] = Rat(1);
  } else {
    auto [u, v] = standard_factorization(w);
    const NcPoly& pu = expansion(u, memo);
    const NcPoly& pv = expansion(v, memo);
    e = nc_sub(nc_mul(pu, pv), nc_mul(pv, pu));
  }
  return memo.emplace(std::move(w), std::move(e)).first->second;
}

}  // namespace

long witt_dimension(int l, int k) {
  // (1/k) sum_{d | k} moebius(d) l^{k/d}.
  auto moebius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  long sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    long pw = 1;
    for (int t = 0; t < k / d; ++t) pw *= l;
    sum += moebius(d) * pw;
  }
  return sum / k;
}

NilpotentSymbol build_free_nilpotent(int l, int mu) {
  if (l < 1 || mu < 1) throw std::invalid_argument("free algebra needs l, mu >= 1");
  auto words = lyndon_words(l, mu);

  // Bucket basis words by length; position of each word within its layer.
  std::vector<std::vector<Word>> by_len(mu + 1);
  std::map<Word, int> index_in_layer;
  for (const auto& w : words) {
    index_in_layer[w] = int(by_len[w.size()].size());
    by_len[w.size()].push_back(w);
  }
  std::vector<int> dims(mu);
  for (int k = 1; k <= mu; ++k) dims[k - 1] = int(by_len[k].size());

  std::map<Word, NcPoly> memo;

  // Express a homogeneous Lie element (as an associative polynomial) in the
  // Lyndon basis of its degree by repeatedly peeling the smallest word.
  auto to_coords = [&](NcPoly p, int deg) {
    Vec coords(dims[deg - 1], Rat(0));
    while (!p.empty()) {
      const Word w = p.begin()->first;
      const Rat c = p.begin()->second;
      auto it = index_in_layer.find(w);
      if (it == index_in_layer.end() || int(w.size()) != deg)
        throw std::logic_error("lie element not expressible in lyndon basis");
      coords[it->second] += c;
      NcPoly scaled;
      for (const auto& [u, cu] : expansion(w, memo)) scaled[u] = c * cu;
      p = nc_sub(std::move(p), scaled);
    }
    return coords;
  };

  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (int i = 1; i <= mu; ++i)
    for (int j = i; i + j <= mu; ++j)
      for (int a = 0; a < dims[i - 1]; ++a) {
        int b0 = (i == j) ? a + 1 : 0;
        for (int b = b0; b < dims[j - 1]; ++b) {
          const Word& u = by_len[i][a];
          const Word& v = by_len[j][b];
          NcPoly comm = nc_sub(nc_mul(expansion(u, memo), expansion(v, memo)),
                               nc_mul(expansion(v, memo), expansion(u, memo)));
          entries.push_back({-i, a, -j, b, to_coords(std::move(comm), i + j)});
        }
      }
  NilpotentSymbol m(dims, entries);
  std::vector<std::vector<std::string>> labels;
  for (int k = 1; k <= mu; ++k) {
    std::vector<std::string> layer;
    for (const Word& w : by_len[k]) {
      std::string name;
      for (int letter : w) name += char('a' + letter);
      layer.push_back(name);
    }
    labels.push_back(std::move(layer));
  }
  m.set_labels(std::move(labels));
  return m;
}

std::vector<int> growth_vector(const NilpotentSymbol& m) {
  std::vector<int> g;
  int acc = 0;
  for (int i = 1; i <= m.depth(); ++i) {
    acc += m.dim(-i);
    g.push_back(acc);
  }
  return g;
}

}  // namespace tanaka
