#include "tanaka/jobs.hpp"

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tanaka/derivations.hpp"
#include "tanaka/distribution.hpp"
#include "tanaka/errors.hpp"
#include "tanaka/flag_prolong.hpp"
#include "tanaka/flag_symbol.hpp"
#include "tanaka/graded.hpp"
#include "tanaka/matrix.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/polynomial.hpp"
#include "tanaka/prolong.hpp"
#include "tanaka/rational.hpp"
#include "tanaka/spencer.hpp"
#include "tanaka/subspace.hpp"

namespace tanaka {
namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Input readers. Every reader takes the JSON-pointer-like path of the value
// it is reading so that a JobError names the offending location.

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw JobError(path + ": " + msg);
}

void check_object(const ojson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

const ojson& need(const ojson& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

void check_keys(const ojson& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(path, "unknown key \"" + it.key() + "\"");
  }
}

int get_int(const ojson& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<unsigned long long>() > 1000000000ull)
    fail(path, "integer out of range");
  long long v = j.get<long long>();
  if (v < -1000000000 || v > 1000000000) fail(path, "integer out of range");
  return int(v);
}

bool get_bool(const ojson& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const ojson& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rat get_rational(const ojson& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<unsigned long long>() > (1ull << 62))
      fail(path, "integer too large; write it as a string");
    return Rat(long(j.get<long long>()));
  }
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const BadRational& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a rational string like \"3/4\"");
}

Mat get_matrix(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  int cols = -1;
  std::vector<Vec> rows;
  for (size_t r = 0; r < j.size(); ++r) {
    std::string rp = path + "[" + std::to_string(r) + "]";
    const ojson& rowj = j[r];
    if (!rowj.is_array() || rowj.empty()) fail(rp, "expected a nonempty row");
    if (cols == -1) cols = int(rowj.size());
    if (int(rowj.size()) != cols) fail(rp, "rows have mixed lengths");
    Vec row;
    for (size_t c = 0; c < rowj.size(); ++c)
      row.push_back(get_rational(rowj[c], rp + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return Mat::from_rows(rows, cols);
}

Vec get_point(const ojson& j, const std::string& path, int n) {
  if (!j.is_array()) fail(path, "expected an array of coordinates");
  if (int(j.size()) != n)
    fail(path, "expected exactly " + std::to_string(n) + " coordinates");
  Vec p;
  for (size_t c = 0; c < j.size(); ++c)
    p.push_back(get_rational(j[c], path + "[" + std::to_string(c) + "]"));
  return p;
}

// ---------------------------------------------------------------------------
// Emission helpers. All rationals are written as exact strings.

ojson emit_vec(const Vec& v) {
  ojson a = ojson::array();
  for (const Rat& r : v) a.push_back(r.str());
  return a;
}

ojson emit_matrix(const Mat& m) {
  ojson rows = ojson::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(emit_vec(m.row(r)));
  return rows;
}

/// Nonzero coordinates of `value` (living in the `degree` component) as
/// [[degree, index], coefficient] terms.
ojson emit_terms(int degree, const Vec& value) {
  ojson terms = ojson::array();
  for (int c = 0; c < int(value.size()); ++c) {
    if (value[c].is_zero()) continue;
    ojson coord = ojson::array({degree, c});
    terms.push_back(ojson::array({coord, value[c].str()}));
  }
  return terms;
}

/// Custom-form descriptor of a nilpotent algebra, directly usable as the
/// "algebra" value of a job. Each unordered basis pair with a nonzero
/// bracket appears once, shallower degree first.
ojson emit_algebra(const NilpotentSymbol& m) {
  ojson dims = ojson::object();
  for (int d = 1; d <= m.depth(); ++d) dims[std::to_string(-d)] = m.dim(-d);
  ojson brackets = ojson::array();
  for (int di = 1; di <= m.depth(); ++di)
    for (int dj = di; di + dj <= m.depth(); ++dj)
      for (int a = 0; a < m.dim(-di); ++a)
        for (int b = (di == dj ? a + 1 : 0); b < m.dim(-dj); ++b) {
          const Vec& v = m.bracket(-di, a, -dj, b);
          if (is_zero(v)) continue;
          ojson e;
          e["x"] = ojson::array({-di, a});
          e["y"] = ojson::array({-dj, b});
          e["value"] = emit_terms(-di - dj, v);
          brackets.push_back(std::move(e));
        }
  ojson custom;
  custom["dims"] = std::move(dims);
  custom["brackets"] = std::move(brackets);
  ojson out;
  out["custom"] = std::move(custom);
  return out;
}

ojson degree_entry(int degree, int dim) {
  ojson e;
  e["degree"] = degree;
  e["dim"] = dim;
  return e;
}

ojson status_ok() {
  ojson s;
  s["kind"] = "ok";
  return s;
}

ojson status_of(ProlongStatus st, int terminated_at, int highest_computed) {
  ojson s;
  if (st == ProlongStatus::Terminated) {
    s["kind"] = "Terminated";
    s["degree"] = terminated_at;
  } else {
    s["kind"] = "Capped";
    s["degree"] = highest_computed;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algebra descriptors.

struct ParsedAlgebra {
  NilpotentSymbol m;
  ojson echo;
};

NilpotentSymbol parse_custom_algebra(const ojson& j, const std::string& path) {
  check_object(j, path);
  check_keys(j, path, {"dims", "brackets"});
  const ojson& dimsj = need(j, path, "dims");
  check_object(dimsj, path + ".dims");
  if (dimsj.empty()) fail(path + ".dims", "at least degree \"-1\" is required");
  int depth = int(dimsj.size());
  std::vector<int> dims(depth, -1);
  for (auto it = dimsj.begin(); it != dimsj.end(); ++it) {
    int deg = 0;
    try {
      size_t used = 0;
      deg = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument(it.key());
    } catch (const std::exception&) {
      fail(path + ".dims", "key \"" + it.key() + "\" is not an integer degree");
    }
    if (deg < -depth || deg > -1)
      fail(path + ".dims", "degrees must be the consecutive range -1 down to -" +
                               std::to_string(depth));
    int n = get_int(it.value(), path + ".dims[\"" + it.key() + "\"]");
    if (n < 0) fail(path + ".dims[\"" + it.key() + "\"]", "dimension must be >= 0");
    dims[-deg - 1] = n;
  }
  for (int d = 1; d <= depth; ++d)
    if (dims[d - 1] < 0)
      fail(path + ".dims", "missing degree \"" + std::to_string(-d) + "\"");

  const ojson& bl = need(j, path, "brackets");
  if (!bl.is_array()) fail(path + ".brackets", "expected an array");
  std::vector<NilpotentSymbol::BracketEntry> entries;
  for (size_t n = 0; n < bl.size(); ++n) {
    std::string ep = path + ".brackets[" + std::to_string(n) + "]";
    const ojson& e = bl[n];
    check_object(e, ep);
    check_keys(e, ep, {"x", "y", "value"});
    auto read_side = [&](const char* key) -> std::pair<int, int> {
      const ojson& s = need(e, ep, key);
      std::string sp = ep + "." + key;
      if (!s.is_array() || s.size() != 2) fail(sp, "expected [degree, index]");
      int deg = get_int(s[0], sp + "[0]");
      int idx = get_int(s[1], sp + "[1]");
      if (deg < -depth || deg > -1) fail(sp, "degree outside [-depth, -1]");
      if (idx < 0 || idx >= dims[-deg - 1]) fail(sp, "index outside the layer");
      return {deg, idx};
    };
    auto [xi, xa] = read_side("x");
    auto [yj, yb] = read_side("y");
    int target = xi + yj;
    if (target < -depth)
      fail(ep, "bracket lands below the depth; such brackets are zero and must "
               "be omitted");
    Vec value(dims[-target - 1], Rat(0));
    const ojson& terms = need(e, ep, "value");
    if (!terms.is_array()) fail(ep + ".value", "expected an array of terms");
    for (size_t t = 0; t < terms.size(); ++t) {
      std::string tp = ep + ".value[" + std::to_string(t) + "]";
      const ojson& term = terms[t];
      if (!term.is_array() || term.size() != 2)
        fail(tp, "expected [[degree, index], coefficient]");
      const ojson& coord = term[0];
      if (!coord.is_array() || coord.size() != 2)
        fail(tp + "[0]", "expected [degree, index]");
      int deg = get_int(coord[0], tp + "[0][0]");
      int idx = get_int(coord[1], tp + "[0][1]");
      if (deg != target)
        fail(tp, "term degree " + std::to_string(deg) + " differs from x+y degree " +
                     std::to_string(target));
      if (idx < 0 || idx >= int(value.size())) fail(tp, "index outside the layer");
      if (!value[idx].is_zero()) fail(tp, "duplicate coordinate in value");
      value[idx] = get_rational(term[1], tp + "[1]");
    }
    entries.push_back({xi, xa, yj, yb, std::move(value)});
  }
  try {
    return NilpotentSymbol(dims, entries);
  } catch (const std::invalid_argument& ex) {
    fail(path, ex.what());
  }
}

ParsedAlgebra parse_algebra(const ojson& j, const std::string& path) {
  check_object(j, path);
  if (j.size() != 1)
    fail(path, "expected exactly one of \"commutative\", \"heisenberg\", "
               "\"free\", \"custom\"");
  const std::string family = j.begin().key();
  const ojson& arg = j.begin().value();
  if (family == "commutative") {
    int n = get_int(arg, path + ".commutative");
    if (n < 1) fail(path + ".commutative", "need n >= 1");
    ojson echo;
    echo["commutative"] = n;
    return {build_commutative(n), std::move(echo)};
  }
  if (family == "heisenberg") {
    int n = get_int(arg, path + ".heisenberg");
    if (n < 3 || n % 2 == 0) fail(path + ".heisenberg", "need odd total dimension >= 3");
    ojson echo;
    echo["heisenberg"] = n;
    return {build_heisenberg(n), std::move(echo)};
  }
  if (family == "free") {
    std::string fp = path + ".free";
    if (!arg.is_array() || arg.size() != 2) fail(fp, "expected [generators, depth]");
    int l = get_int(arg[0], fp + "[0]");
    int mu = get_int(arg[1], fp + "[1]");
    if (l < 1 || mu < 1) fail(fp, "need generators >= 1 and depth >= 1");
    ojson echo;
    echo["free"] = ojson::array({l, mu});
    return {build_free_nilpotent(l, mu), std::move(echo)};
  }
  if (family == "custom") {
    NilpotentSymbol m = parse_custom_algebra(arg, path + ".custom");
    return {m, emit_algebra(m)};
  }
  fail(path, "unknown algebra family \"" + family + "\"");
}

// ---------------------------------------------------------------------------
// Flag symbol descriptors.

struct ParsedDatum {
  GradedEndomorphism datum;
  ojson echo;
};

ParsedDatum parse_flag_datum(const ojson& j, const std::string& path) {
  check_object(j, path);

  // Compact one-key shorthands, normalized to the family form in the echo:
  // {"delta_rp": [r, p]}, {"tau_m": m} or {"tau_m": [m, sign]}, {"sum": [...]}.
  if (!j.contains("family") && j.size() == 1) {
    const std::string& key = j.begin().key();
    const ojson& arg = j.begin().value();
    ojson expanded;
    if (key == "delta_rp") {
      std::string sp = path + ".delta_rp";
      if (!arg.is_array() || arg.size() != 2) fail(sp, "expected [r, p]");
      expanded["family"] = "delta_rp";
      expanded["r"] = get_int(arg[0], sp + "[0]");
      expanded["p"] = get_int(arg[1], sp + "[1]");
    } else if (key == "tau_m") {
      std::string sp = path + ".tau_m";
      expanded["family"] = "tau_m";
      if (arg.is_array()) {
        if (arg.size() != 2) fail(sp, "expected m or [m, sign]");
        expanded["m"] = get_int(arg[0], sp + "[0]");
        expanded["sign"] = get_int(arg[1], sp + "[1]");
      } else {
        expanded["m"] = get_int(arg, sp);
      }
    } else if (key == "sum") {
      expanded["family"] = "sum";
      expanded["parts"] = arg;
    } else {
      fail(path, "unknown flag symbol shorthand \"" + key + "\"");
    }
    return parse_flag_datum(expanded, path);
  }

  std::string family = get_string(need(j, path, "family"), path + ".family");
  if (family == "delta_rp") {
    check_keys(j, path, {"family", "r", "p"});
    int r = get_int(need(j, path, "r"), path + ".r");
    int p = get_int(need(j, path, "p"), path + ".p");
    if (!(r <= p && p < 0)) fail(path, "delta_rp needs r <= p < 0");
    ojson echo;
    echo["family"] = "delta_rp";
    echo["r"] = r;
    echo["p"] = p;
    return {make_delta_rp(r, p), std::move(echo)};
  }
  if (family == "tau_m") {
    check_keys(j, path, {"family", "m", "sign"});
    int m = get_int(need(j, path, "m"), path + ".m");
    if (m < 1) fail(path + ".m", "tau_m needs m >= 1");
    int sign = 1;
    if (j.contains("sign")) {
      sign = get_int(j.at("sign"), path + ".sign");
      if (sign != 1 && sign != -1) fail(path + ".sign", "sign must be 1 or -1");
    }
    ojson echo;
    echo["family"] = "tau_m";
    echo["m"] = m;
    echo["sign"] = sign;
    return {make_tau_m(m, sign), std::move(echo)};
  }
  if (family == "sum") {
    check_keys(j, path, {"family", "parts"});
    const ojson& partsj = need(j, path, "parts");
    if (!partsj.is_array() || partsj.empty())
      fail(path + ".parts", "expected a nonempty array of summands");
    std::vector<GradedEndomorphism> parts;
    ojson echoes = ojson::array();
    for (size_t n = 0; n < partsj.size(); ++n) {
      ParsedDatum part =
          parse_flag_datum(partsj[n], path + ".parts[" + std::to_string(n) + "]");
      parts.push_back(std::move(part.datum));
      echoes.push_back(std::move(part.echo));
    }
    bool paired = parts.front().pairing.has_value();
    for (const GradedEndomorphism& p : parts)
      if (p.pairing.has_value() != paired)
        fail(path + ".parts", "summands must either all carry a pairing or none");
    ojson echo;
    echo["family"] = "sum";
    echo["parts"] = std::move(echoes);
    return {direct_sum(parts), std::move(echo)};
  }
  if (family == "custom") {
    check_keys(j, path, {"family", "degrees", "matrix", "pairing"});
    const ojson& degj = need(j, path, "degrees");
    if (!degj.is_array() || degj.empty())
      fail(path + ".degrees", "expected a nonempty array of coordinate degrees");
    GradedSpace space;
    int prev = 0;
    for (size_t c = 0; c < degj.size(); ++c) {
      int d = get_int(degj[c], path + ".degrees[" + std::to_string(c) + "]");
      if (c > 0 && d < prev)
        fail(path + ".degrees", "degrees must be listed in ascending order");
      prev = d;
      space.components[d] += 1;
    }
    int n = int(degj.size());
    Mat mat = get_matrix(need(j, path, "matrix"), path + ".matrix");
    if (mat.rows() != n || mat.cols() != n)
      fail(path + ".matrix", "expected a " + std::to_string(n) + "x" +
                                 std::to_string(n) + " matrix");
    std::optional<Mat> pairing;
    if (j.contains("pairing")) {
      Mat om = get_matrix(j.at("pairing"), path + ".pairing");
      if (om.rows() != n || om.cols() != n)
        fail(path + ".pairing", "expected a " + std::to_string(n) + "x" +
                                    std::to_string(n) + " matrix");
      pairing = std::move(om);
    }
    ojson echo;
    echo["family"] = "custom";
    echo["degrees"] = degj;
    echo["matrix"] = emit_matrix(mat);
    if (pairing) echo["pairing"] = emit_matrix(*pairing);
    return {GradedEndomorphism{std::move(space), std::move(mat), std::move(pairing)},
            std::move(echo)};
  }
  fail(path + ".family", "unknown family \"" + family +
                             "\" (expected delta_rp, tau_m, sum, or custom)");
}

/// Build the canonical flag symbol of a datum, turning construction-time
/// argument errors (a fixed element without a pairing, a matrix that is not
/// of pure degree -1) into schema errors; genuine MathErrors pass through.
FlagSymbol resolve_flag_symbol(const GradedEndomorphism& datum, DeltaMode mode,
                               const std::string& path) {
  try {
    return canonical_flag_symbol(datum, mode);
  } catch (const MathError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  } catch (const std::logic_error& e) {
    fail(path, e.what());
  }
}

/// Run the inner prolongation behind a flag_prolongation g0 descriptor. The
/// cap is set past the ambient degree spread, where the recursion always
/// terminates, so the cap never binds.
FlagProlongation full_flag_prolongation(const FlagSymbol& sym) {
  int spread = sym.flag().hi() - sym.flag().lo();
  FlagProlongation u = flag_prolong(sym, spread + 2);
  if (u.status() != ProlongStatus::Terminated)
    throw std::logic_error("flag prolongation failed to terminate below its "
                           "ambient degree bound");
  return u;
}

// ---------------------------------------------------------------------------
// g0 descriptors and the algebra they attach to.

/// Gate for commands whose engine requires a structurally valid algebra; the
/// engines themselves reject invalid input, but through generic argument
/// errors rather than a classified mathematical failure.
void require_valid(const NilpotentSymbol& m) {
  SymbolChecks c = m.validate();
  if (c.ok()) return;
  std::string what = "the algebra fails its structural checks:";
  if (!c.jacobi) what += " jacobi";
  if (!c.graded) what += " graded";
  if (!c.fundamental) what += " fundamental";
  throw MathError("InvalidSymbol", what);
}

struct ResolvedPair {
  NilpotentSymbol m;
  Subalgebra0 g0;
  ojson echo_algebra;
  ojson echo_g0;
};

ResolvedPair resolve_pair(const ojson& job) {
  std::optional<ParsedAlgebra> declared;
  if (job.contains("algebra")) declared = parse_algebra(job.at("algebra"), "$.algebra");

  const ojson& g0j = need(job, "$", "g0");
  auto require_declared = [&]() -> const NilpotentSymbol& {
    if (!declared)
      fail("$.algebra", "an algebra is required unless g0 is a flag_prolongation");
    require_valid(declared->m);
    return declared->m;
  };
  auto wrap = [&](auto&& build, const std::string& path) -> Subalgebra0 {
    try {
      return build();
    } catch (const MathError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  };

  if (g0j.is_string()) {
    std::string name = g0j.get<std::string>();
    const NilpotentSymbol& m = require_declared();
    if (name == "full")
      return {m, derivations0(m), declared->echo, ojson("full")};
    if (name == "csp" || name == "sp") {
      std::optional<Mat> omega = m.pairing();
      if (!omega)
        fail("$.g0", "the algebra carries no canonical pairing; pass {\"" + name +
                         "\": <omega>} with an explicit form");
      Subalgebra0 g0 = wrap(
          [&] { return name == "csp" ? restrict_to_csp(m, *omega)
                                     : restrict_to_sp(m, *omega); },
          "$.g0");
      return {m, std::move(g0), declared->echo, ojson(name)};
    }
    fail("$.g0", "unknown g0 \"" + name + "\" (expected full, csp, or sp)");
  }

  check_object(g0j, "$.g0");
  if (g0j.size() != 1)
    fail("$.g0", "expected exactly one of \"full\", \"csp\", \"sp\", "
                 "\"flag_prolongation\", \"custom\"");
  const std::string kind = g0j.begin().key();
  const ojson& arg = g0j.begin().value();

  // {"full": true} and {"csp"/"sp": true} mean the same as the bare string
  // forms: the whole derivation algebra, or the restriction cut out by the
  // algebra's own pairing.
  if (arg.is_boolean()) {
    if (!arg.get<bool>()) fail("$.g0." + kind, "false selects nothing; use true");
    if (kind == "full" || kind == "csp" || kind == "sp") {
      ojson named(kind);
      ojson patched = job;
      patched["g0"] = named;
      return resolve_pair(patched);
    }
    fail("$.g0", "unknown g0 kind \"" + kind + "\"");
  }
  if (kind == "full") fail("$.g0.full", "expected true");

  if (kind == "csp" || kind == "sp") {
    const NilpotentSymbol& m = require_declared();
    Mat omega = get_matrix(arg, "$.g0." + kind);
    int n = m.dim(-1);
    if (omega.rows() != n || omega.cols() != n)
      fail("$.g0." + kind, "expected a " + std::to_string(n) + "x" +
                               std::to_string(n) + " matrix");
    Subalgebra0 g0 = wrap(
        [&] { return kind == "csp" ? restrict_to_csp(m, omega)
                                   : restrict_to_sp(m, omega); },
        "$.g0." + kind);
    ojson echo;
    echo[kind] = emit_matrix(omega);
    return {m, std::move(g0), declared->echo, std::move(echo)};
  }
  if (kind == "custom") {
    const NilpotentSymbol& m = require_declared();
    std::string path = "$.g0.custom";
    if (!arg.is_array() || arg.empty())
      fail(path, "expected a nonempty array of matrices");
    int n = m.dim(-1);
    std::vector<Mat> mats;
    ojson echo_mats = ojson::array();
    for (size_t t = 0; t < arg.size(); ++t) {
      Mat a = get_matrix(arg[t], path + "[" + std::to_string(t) + "]");
      if (a.rows() != n || a.cols() != n)
        fail(path + "[" + std::to_string(t) + "]",
             "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      echo_mats.push_back(emit_matrix(a));
      mats.push_back(std::move(a));
    }
    // NotASubalgebra from an unclosed span is a mathematical failure, not a
    // schema one; let it propagate.
    Subalgebra0 g0 = restrict_to_custom(m, mats);
    ojson echo;
    echo["custom"] = std::move(echo_mats);
    return {m, std::move(g0), declared->echo, std::move(echo)};
  }
  if (kind == "flag_prolongation") {
    ParsedDatum datum = parse_flag_datum(arg, "$.g0.flag_prolongation");
    FlagSymbol sym =
        resolve_flag_symbol(datum.datum, DeltaMode::Line, "$.g0.flag_prolongation");
    FlagProlongation u = full_flag_prolongation(sym);
    Subalgebra0 g0 = to_subalgebra0(sym, u);
    NilpotentSymbol parent = sym.ambient().parent();
    require_valid(parent);
    if (declared && !(declared->m == parent))
      fail("$.algebra",
           "declared algebra differs from the flag symbol's canonical base "
           "algebra; omit \"algebra\" or declare the exact same structure "
           "constants");
    ojson echo_algebra = declared ? declared->echo : emit_algebra(parent);
    ojson echo;
    echo["flag_prolongation"] = std::move(datum.echo);
    return {std::move(parent), std::move(g0), std::move(echo_algebra), std::move(echo)};
  }
  fail("$.g0", "unknown g0 kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Distributions.

struct ParsedDistribution {
  DistributionSpec d;
  ojson echo;
};

ParsedDistribution parse_distribution(const ojson& j, const std::string& path) {
  check_object(j, path);
  check_keys(j, path, {"n", "fields"});
  int n = get_int(need(j, path, "n"), path + ".n");
  if (n < 1) fail(path + ".n", "need n >= 1");
  const ojson& fl = need(j, path, "fields");
  if (!fl.is_array() || fl.empty())
    fail(path + ".fields", "expected a nonempty array of vector fields");
  std::vector<PolyVectorField> fields;
  ojson echo_fields = ojson::array();
  for (size_t fi = 0; fi < fl.size(); ++fi) {
    std::string fp = path + ".fields[" + std::to_string(fi) + "]";
    const ojson& fj = fl[fi];
    check_object(fj, fp);
    std::vector<std::string> comps(size_t(n), "0");
    for (auto it = fj.begin(); it != fj.end(); ++it) {
      const std::string& key = it.key();
      int coord = 0;
      bool ok = key.size() > 2 && key[0] == 'd' && key[1] == 'x';
      if (ok) {
        try {
          size_t used = 0;
          coord = std::stoi(key.substr(2), &used);
          ok = used == key.size() - 2;
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (!ok || coord < 1 || coord > n)
        fail(fp, "unknown key \"" + key + "\" (components are dx1..dx" +
                     std::to_string(n) + "; omitted ones are zero)");
      comps[size_t(coord - 1)] = get_string(it.value(), fp + "." + key);
    }
    try {
      fields.push_back(PolyVectorField::parse(n, comps));
    } catch (const PolyParseError& e) {
      fail(fp, e.what());
    }
    ojson fe = ojson::object();
    for (int c = 0; c < n; ++c) {
      const Polynomial& poly = fields.back().components[size_t(c)];
      if (!poly.is_zero()) fe["dx" + std::to_string(c + 1)] = poly.str();
    }
    echo_fields.push_back(std::move(fe));
  }
  ojson echo;
  echo["n"] = n;
  echo["fields"] = std::move(echo_fields);
  return {DistributionSpec(n, std::move(fields)), std::move(echo)};
}

// ---------------------------------------------------------------------------
// Command runners. Each returns a normalized job echo plus the report body;
// run_job assembles the envelope.

struct RunOutput {
  ojson echo = ojson::object();
  ojson body = ojson::object();
  int exit_code = 0;
  std::string error_code;
  std::string error_message;
};

/// Effective boolean: the job key (when present) or-ed with the CLI switch.
bool effective_flag(const ojson& job, const char* key, bool forced) {
  bool v = forced;
  if (job.contains(key)) v = get_bool(job.at(key), std::string("$.") + key) || v;
  return v;
}

int effective_max_degree(const ojson& job) {
  int v = 20;
  if (job.contains("max_degree")) v = get_int(job.at("max_degree"), "$.max_degree");
  if (v < 1) fail("$.max_degree", "need max_degree >= 1");
  return v;
}

ojson negative_degrees(const NilpotentSymbol& m) {
  ojson a = ojson::array();
  for (int d = -m.depth(); d <= -1; ++d) a.push_back(degree_entry(d, m.dim(d)));
  return a;
}

RunOutput run_check(const ojson& job) {
  check_keys(job, "$", {"version", "command", "algebra"});
  ParsedAlgebra alg = parse_algebra(need(job, "$", "algebra"), "$.algebra");
  SymbolChecks c = alg.m.validate();

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "check";
  out.echo["algebra"] = alg.echo;
  out.body["degrees"] = negative_degrees(alg.m);
  out.body["total_dim"] = alg.m.total_dim();
  out.body["status"] = status_ok();
  ojson checks;
  checks["jacobi"] = c.jacobi;
  checks["graded"] = c.graded;
  checks["fundamental"] = c.fundamental;
  out.body["checks"] = std::move(checks);
  out.body["algebra"] = emit_algebra(alg.m);
  if (!c.ok()) {
    out.exit_code = 3;
    out.error_code = "InvalidSymbol";
    out.error_message = "one or more structural checks failed; see the report";
  }
  return out;
}

RunOutput run_derivations(const ojson& job, const JobOptions& opt) {
  check_keys(job, "$", {"version", "command", "algebra", "emit_bases"});
  ParsedAlgebra alg = parse_algebra(need(job, "$", "algebra"), "$.algebra");
  require_valid(alg.m);
  bool emit_bases = effective_flag(job, "emit_bases", opt.emit_bases);
  Subalgebra0 g0 = derivations0(alg.m);

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "derivations";
  out.echo["algebra"] = alg.echo;
  out.echo["emit_bases"] = emit_bases;
  ojson degrees = ojson::array();
  degrees.push_back(degree_entry(0, g0.dim()));
  out.body["degrees"] = std::move(degrees);
  out.body["total_dim"] = g0.dim();
  out.body["status"] = status_ok();
  // Verified during Subalgebra0 construction, which throws otherwise.
  ojson checks;
  checks["derivation_property"] = true;
  checks["closure"] = true;
  checks["determined_on_top"] = true;
  out.body["checks"] = std::move(checks);
  out.body["algebra"] = emit_algebra(alg.m);
  if (emit_bases) {
    ojson elements = ojson::array();
    for (int t = 0; t < g0.dim(); ++t) {
      ojson blocks = ojson::array();
      for (const Mat& b : g0.element_blocks(t)) blocks.push_back(emit_matrix(b));
      elements.push_back(std::move(blocks));
    }
    ojson level;
    level["degree"] = 0;
    level["elements"] = std::move(elements);
    ojson bases = ojson::array();
    bases.push_back(std::move(level));
    out.body["bases"] = std::move(bases);
  }
  return out;
}

void finish_prolonged(RunOutput& out, const ProlongedAlgebra& u, bool require_finite,
                      bool emit_bases, bool emit_brackets) {
  const NilpotentSymbol& m = u.negative();
  ojson degrees = ojson::array();
  for (int d = -m.depth(); d <= u.max_degree(); ++d)
    degrees.push_back(degree_entry(d, u.dim(d)));
  out.body["degrees"] = std::move(degrees);
  out.body["total_dim"] = u.total_dim();
  out.body["status"] = status_of(u.status(), u.terminated_at(), u.max_degree());
  const ProlongVerification& v = u.verification();
  ojson checks;
  checks["jacobi"] = v.jacobi;
  checks["determinacy"] = v.determinacy;
  checks["transitivity"] = v.transitivity;
  checks["termination_zero"] = v.termination_zero;
  out.body["checks"] = std::move(checks);
  out.body["algebra"] = emit_algebra(m);

  if (emit_bases) {
    ojson bases = ojson::array();
    for (int k = 0; k <= u.max_degree(); ++k) {
      ojson elements = ojson::array();
      for (const Action& a : u.component(k)) {
        ojson blocks = ojson::array();
        for (const Mat& b : a.blocks) blocks.push_back(emit_matrix(b));
        elements.push_back(std::move(blocks));
      }
      ojson level;
      level["degree"] = k;
      level["elements"] = std::move(elements);
      bases.push_back(std::move(level));
    }
    out.body["bases"] = std::move(bases);
  }
  if (emit_brackets) {
    ojson brackets = ojson::array();
    bool capped = u.status() == ProlongStatus::Capped;
    for (int d1 = -m.depth(); d1 <= u.max_degree(); ++d1)
      for (int d2 = d1; d2 <= u.max_degree(); ++d2) {
        if (d1 < 0 && d2 < 0) continue;  // already in the algebra descriptor
        if (capped && d1 + d2 > u.max_degree()) continue;
        int n1 = u.dim(d1), n2 = u.dim(d2);
        for (int a = 0; a < n1; ++a)
          for (int b = (d1 == d2 ? a + 1 : 0); b < n2; ++b) {
            Vec v2 = u.bracket(d1, unit_vec(n1, a), d2, unit_vec(n2, b));
            if (is_zero(v2)) continue;
            ojson e;
            e["x"] = ojson::array({d1, a});
            e["y"] = ojson::array({d2, b});
            e["value"] = emit_terms(d1 + d2, v2);
            brackets.push_back(std::move(e));
          }
      }
    out.body["brackets"] = std::move(brackets);
  }

  if (!v.ok()) {
    out.exit_code = 3;
    out.error_code = "VerificationFailed";
    out.error_message = "the prolongation fails a structural check; see the report";
  } else if (require_finite && u.status() == ProlongStatus::Capped) {
    out.exit_code = 4;
    out.error_code = "Capped";
    out.error_message = "still growing at degree " + std::to_string(u.max_degree()) +
                        "; rerun with a larger max_degree or drop require_finite";
  }
}

RunOutput run_prolong(const ojson& job, const JobOptions& opt) {
  check_keys(job, "$",
             {"version", "command", "algebra", "g0", "max_degree", "require_finite",
              "emit_bases", "emit_brackets"});
  ResolvedPair pair = resolve_pair(job);
  int max_degree = effective_max_degree(job);
  bool require_finite = effective_flag(job, "require_finite", opt.require_finite);
  bool emit_bases = effective_flag(job, "emit_bases", opt.emit_bases);
  bool emit_brackets = effective_flag(job, "emit_brackets", opt.emit_brackets);

  // The job counts components: degrees 0..max_degree-1 are solved.
  ProlongedAlgebra u = tanaka_prolong(pair.m, pair.g0, max_degree - 1);

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "prolong";
  out.echo["algebra"] = pair.echo_algebra;
  out.echo["g0"] = pair.echo_g0;
  out.echo["max_degree"] = max_degree;
  out.echo["require_finite"] = require_finite;
  out.echo["emit_bases"] = emit_bases;
  out.echo["emit_brackets"] = emit_brackets;
  finish_prolonged(out, u, require_finite, emit_bases, emit_brackets);
  return out;
}

RunOutput run_flag_prolong(const ojson& job, const JobOptions& opt, bool parameterized) {
  check_keys(job, "$",
             {"version", "command", "flag_symbol", "max_degree", "require_finite",
              "emit_bases", "emit_brackets"});
  ParsedDatum datum = parse_flag_datum(need(job, "$", "flag_symbol"), "$.flag_symbol");
  DeltaMode mode = parameterized ? DeltaMode::FixedElement : DeltaMode::Line;
  FlagSymbol sym = resolve_flag_symbol(datum.datum, mode, "$.flag_symbol");
  int max_degree = effective_max_degree(job);
  bool require_finite = effective_flag(job, "require_finite", opt.require_finite);
  bool emit_bases = effective_flag(job, "emit_bases", opt.emit_bases);
  bool emit_brackets = effective_flag(job, "emit_brackets", opt.emit_brackets);

  FlagProlongation u = parameterized ? flag_prolong_param(sym, max_degree - 1)
                                     : flag_prolong(sym, max_degree - 1);
  int n = u.matrix_dim();

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = parameterized ? "flag-prolong-param" : "flag-prolong";
  out.echo["flag_symbol"] = datum.echo;
  out.echo["max_degree"] = max_degree;
  out.echo["require_finite"] = require_finite;
  out.echo["emit_bases"] = emit_bases;
  out.echo["emit_brackets"] = emit_brackets;

  ojson degrees = ojson::array();
  for (int k = -1; k <= u.max_degree(); ++k) degrees.push_back(degree_entry(k, u.dim(k)));
  out.body["degrees"] = std::move(degrees);
  out.body["total_dim"] = u.total_dim();
  out.body["status"] = status_of(u.status(), u.terminated_at(), u.max_degree());
  bool closed = u.closed_under_brackets();
  ojson checks;
  checks["closed_under_brackets"] = closed;
  out.body["checks"] = std::move(checks);
  out.body["algebra"] = emit_algebra(sym.ambient().parent());

  if (emit_bases) {
    ojson bases = ojson::array();
    for (int k = -1; k <= u.max_degree(); ++k) {
      ojson elements = ojson::array();
      const Mat& comp = u.component(k);
      for (int r = 0; r < comp.rows(); ++r)
        elements.push_back(emit_matrix(Mat::unvec(comp.row(r), n, n)));
      ojson level;
      level["degree"] = k;
      level["elements"] = std::move(elements);
      bases.push_back(std::move(level));
    }
    out.body["bases"] = std::move(bases);
  }
  if (emit_brackets) {
    ojson brackets = ojson::array();
    bool capped = u.status() == ProlongStatus::Capped;
    for (int d1 = -1; d1 <= u.max_degree(); ++d1)
      for (int d2 = d1; d2 <= u.max_degree(); ++d2) {
        if (capped && d1 + d2 > u.max_degree()) continue;
        if (d1 + d2 < -1) continue;  // delta commutes; nothing lands below -1
        const Mat& c1 = u.component(d1);
        const Mat& c2 = u.component(d2);
        int target = d1 + d2;
        Subspace span = target > u.max_degree() ? Subspace::zero(n * n)
                                                : Subspace::span(u.component(target));
        for (int a = 0; a < c1.rows(); ++a)
          for (int b = (d1 == d2 ? a + 1 : 0); b < c2.rows(); ++b) {
            Mat x = Mat::unvec(c1.row(a), n, n);
            Mat y = Mat::unvec(c2.row(b), n, n);
            Vec val = commutator(x, y).vec();
            if (is_zero(val)) continue;
            std::optional<Vec> coords = span.coordinates_of(val);
            if (!coords) continue;  // cannot happen once closure holds
            ojson e;
            e["x"] = ojson::array({d1, a});
            e["y"] = ojson::array({d2, b});
            e["value"] = emit_terms(target, *coords);
            brackets.push_back(std::move(e));
          }
      }
    out.body["brackets"] = std::move(brackets);
  }

  if (!closed) {
    out.exit_code = 3;
    out.error_code = "ClosureFailed";
    out.error_message = "the computed components are not closed under brackets";
  } else if (require_finite && u.status() == ProlongStatus::Capped) {
    out.exit_code = 4;
    out.error_code = "Capped";
    out.error_message = "still growing at degree " + std::to_string(u.max_degree()) +
                        "; rerun with a larger max_degree or drop require_finite";
  }
  return out;
}

RunOutput run_spencer(const ojson& job, const JobOptions& opt) {
  check_keys(job, "$",
             {"version", "command", "algebra", "g0", "max_degree", "require_finite"});
  ResolvedPair pair = resolve_pair(job);
  int max_degree = effective_max_degree(job);
  bool require_finite = effective_flag(job, "require_finite", opt.require_finite);

  ProlongedAlgebra u = tanaka_prolong(pair.m, pair.g0, max_degree - 1);

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "spencer";
  out.echo["algebra"] = pair.echo_algebra;
  out.echo["g0"] = pair.echo_g0;
  out.echo["max_degree"] = max_degree;
  out.echo["require_finite"] = require_finite;
  finish_prolonged(out, u, require_finite, false, false);

  bool sizes_ok = true;
  ojson ops = ojson::array();
  for (int k = 0; k <= u.max_degree(); ++k) {
    SpencerMap s = spencer_gr(u, k);
    int image = rank(s.matrix);
    int complement = normalization_complement(s).dim();
    sizes_ok = sizes_ok && complement + image == s.target_dim();
    ojson e;
    e["degree"] = k;
    e["domain_dim"] = s.domain_dim();
    e["target_dim"] = s.target_dim();
    e["kernel_dim"] = s.domain_dim() - image;
    e["image_dim"] = image;
    e["complement_dim"] = complement;
    ops.push_back(std::move(e));
  }
  out.body["operators"] = std::move(ops);
  out.body["checks"]["complement_sizes"] = sizes_ok;
  if (!sizes_ok && out.exit_code == 0) {
    out.exit_code = 3;
    out.error_code = "VerificationFailed";
    out.error_message = "a normalization complement has the wrong dimension";
  }
  return out;
}

RunOutput run_symbol(const ojson& job) {
  check_keys(job, "$",
             {"version", "command", "distribution", "point", "sample_points",
              "depth_cap"});
  ParsedDistribution dist = parse_distribution(need(job, "$", "distribution"),
                                               "$.distribution");
  int n = dist.d.n_coords;
  Vec point(size_t(n), Rat(0));
  if (job.contains("point")) point = get_point(job.at("point"), "$.point", n);
  std::vector<Vec> samples;
  if (job.contains("sample_points")) {
    const ojson& sj = job.at("sample_points");
    if (!sj.is_array()) fail("$.sample_points", "expected an array of points");
    for (size_t s = 0; s < sj.size(); ++s)
      samples.push_back(
          get_point(sj[s], "$.sample_points[" + std::to_string(s) + "]", n));
  }
  int depth_cap = kDefaultDepthCap;
  if (job.contains("depth_cap")) {
    depth_cap = get_int(job.at("depth_cap"), "$.depth_cap");
    if (depth_cap < 1) fail("$.depth_cap", "need depth_cap >= 1");
  }

  NilpotentSymbol sym = symbol_at(dist.d, point, samples, depth_cap);
  SymbolChecks c = sym.validate();

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "symbol";
  out.echo["distribution"] = dist.echo;
  out.echo["point"] = emit_vec(point);
  ojson sechos = ojson::array();
  for (const Vec& s : samples) sechos.push_back(emit_vec(s));
  out.echo["sample_points"] = std::move(sechos);
  out.echo["depth_cap"] = depth_cap;

  out.body["degrees"] = negative_degrees(sym);
  out.body["total_dim"] = sym.total_dim();
  out.body["status"] = status_ok();
  ojson checks;
  checks["jacobi"] = c.jacobi;
  checks["graded"] = c.graded;
  checks["fundamental"] = c.fundamental;
  out.body["checks"] = std::move(checks);
  ojson growth = ojson::array();
  for (int g : growth_vector(sym)) growth.push_back(g);
  out.body["growth_vector"] = std::move(growth);
  out.body["algebra"] = emit_algebra(sym);
  if (!c.ok()) {
    out.exit_code = 3;
    out.error_code = "InvalidSymbol";
    out.error_message = "the computed symbol fails a structural check; see the report";
  }
  return out;
}

RunOutput run_growth(const ojson& job) {
  check_keys(job, "$", {"version", "command", "distribution", "point", "depth_cap"});
  ParsedDistribution dist = parse_distribution(need(job, "$", "distribution"),
                                               "$.distribution");
  int n = dist.d.n_coords;
  Vec point(size_t(n), Rat(0));
  if (job.contains("point")) point = get_point(job.at("point"), "$.point", n);
  int depth_cap = kDefaultDepthCap;
  if (job.contains("depth_cap")) {
    depth_cap = get_int(job.at("depth_cap"), "$.depth_cap");
    if (depth_cap < 1) fail("$.depth_cap", "need depth_cap >= 1");
  }

  std::vector<Subspace> steps = weak_derived_flag(dist.d, point, depth_cap);
  bool full = steps.back().is_full();
  // The flag drops the stabilized repeat, so stopping short of the cap means
  // it stabilized; at the cap only one more level can tell.
  bool stabilized = full || int(steps.size()) < depth_cap ||
                    weak_derived_flag(dist.d, point, depth_cap + 1).size() ==
                        steps.size();

  RunOutput out;
  out.echo["version"] = 1;
  out.echo["command"] = "growth";
  out.echo["distribution"] = dist.echo;
  out.echo["point"] = emit_vec(point);
  out.echo["depth_cap"] = depth_cap;

  int depth = int(steps.size());
  ojson degrees = ojson::array();
  for (int jstep = depth; jstep >= 1; --jstep) {
    int below = jstep >= 2 ? steps[size_t(jstep - 2)].dim() : 0;
    degrees.push_back(degree_entry(-jstep, steps[size_t(jstep - 1)].dim() - below));
  }
  out.body["degrees"] = std::move(degrees);
  out.body["total_dim"] = steps.back().dim();
  out.body["status"] = status_ok();
  // Not filling the whole space is a property of the distribution, not a
  // failure, so it is reported outside the pass/fail checks.
  ojson checks;
  checks["stabilized"] = stabilized;
  out.body["checks"] = std::move(checks);
  out.body["full_space"] = full;
  ojson growth = ojson::array();
  for (const Subspace& s : steps) growth.push_back(s.dim());
  out.body["growth_vector"] = std::move(growth);
  return out;
}

// ---------------------------------------------------------------------------
// Envelope and table rendering.

std::string render_table(const ojson& report) {
  std::ostringstream os;
  for (const ojson& e : report.at("degrees"))
    os << "degree " << e.at("degree").get<int>() << ": dim " << e.at("dim").get<int>()
       << "\n";
  const ojson& status = report.at("status");
  std::string kind = status.at("kind").get<std::string>();
  os << "status: " << kind;
  if (kind != "ok") os << " " << status.at("degree").get<int>();
  os << "\n";
  if (report.contains("checks"))
    for (auto it = report.at("checks").begin(); it != report.at("checks").end(); ++it)
      if (!it.value().get<bool>()) os << "failed: " << it.key() << "\n";
  if (report.contains("growth_vector")) {
    os << "growth: (";
    const ojson& g = report.at("growth_vector");
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i].get<int>();
    os << ")\n";
  }
  if (report.contains("operators"))
    for (const ojson& e : report.at("operators"))
      os << "spencer " << e.at("degree").get<int>() << ": domain "
         << e.at("domain_dim").get<int>() << " target " << e.at("target_dim").get<int>()
         << " kernel " << e.at("kernel_dim").get<int>() << " image "
         << e.at("image_dim").get<int>() << " complement "
         << e.at("complement_dim").get<int>() << "\n";
  return os.str();
}

}  // namespace

JobResult run_job(const std::string& job_text, const JobOptions& options) {
  auto start = std::chrono::steady_clock::now();
  ojson job;
  try {
    job = ojson::parse(job_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JobError(std::string("invalid JSON: ") + e.what());
  }
  check_object(job, "$");
  if (job.contains("version") && get_int(job.at("version"), "$.version") != 1)
    fail("$.version", "unsupported version (this build understands 1)");
  std::string command = get_string(need(job, "$", "command"), "$.command");

  RunOutput out;
  if (command == "check")
    out = run_check(job);
  else if (command == "derivations")
    out = run_derivations(job, options);
  else if (command == "prolong")
    out = run_prolong(job, options);
  else if (command == "flag-prolong")
    out = run_flag_prolong(job, options, false);
  else if (command == "flag-prolong-param")
    out = run_flag_prolong(job, options, true);
  else if (command == "spencer")
    out = run_spencer(job, options);
  else if (command == "symbol")
    out = run_symbol(job);
  else if (command == "growth")
    out = run_growth(job);
  else
    fail("$.command", "unknown command \"" + command + "\"");

  ojson report;
  report["report_version"] = 1;
  report["command"] = command;
  report["job"] = std::move(out.echo);
  for (auto it = out.body.begin(); it != out.body.end(); ++it)
    report[it.key()] = std::move(it.value());

  JobResult result;
  result.report_table = render_table(report);
  auto elapsed = std::chrono::steady_clock::now() - start;
  report["timing"]["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  result.report_json = report.dump(2) + "\n";
  result.exit_code = out.exit_code;
  result.error_code = out.error_code;
  result.error_message = out.error_message;
  return result;
}

}  // namespace tanaka
