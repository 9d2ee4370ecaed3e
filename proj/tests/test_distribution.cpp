#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tanaka/distribution.hpp"
#include "tanaka/errors.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/polynomial.hpp"
#include "test_helpers.hpp"

using namespace tanaka;

namespace {

Vec origin(int n) { return Vec(n); }

// The contact distribution span(d/dx1, d/dx2 + x1 d/dx3) on Q^3.
DistributionSpec contact3() {
  return DistributionSpec(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                              PolyVectorField::parse(3, {"0", "1", "x1"})});
}

// The rank-2 model on Q^5 with small growth vector (2, 3, 5).
DistributionSpec model235() {
  return DistributionSpec(
      5, {PolyVectorField::parse(5, {"1", "0", "0", "0", "0"}),
          PolyVectorField::parse(5, {"0", "1", "x1", "1/2*x1^2", "x1*x2"})});
}

// All monomial fields m(x) d/dx_k on Q^2 with deg m <= max_degree.
std::vector<PolyVectorField> monomial_fields(int max_degree) {
  std::vector<PolyVectorField> out;
  for (int dx = 0; dx <= max_degree; ++dx) {
    for (int dy = 0; dy + dx <= max_degree; ++dy) {
      Polynomial m = Polynomial::constant(2, Rat(1));
      for (int r = 0; r < dx; ++r) m = m * Polynomial::variable(2, 0);
      for (int r = 0; r < dy; ++r) m = m * Polynomial::variable(2, 1);
      for (int k = 0; k < 2; ++k) {
        std::vector<Polynomial> comps(2, Polynomial(2));
        comps[k] = m;
        out.push_back(PolyVectorField(2, comps));
      }
    }
  }
  return out;
}

// Random field on Q^n with coefficients polynomial in x1, x2 only.
PolyVectorField random_field(std::mt19937& g, int n, int max_degree) {
  std::vector<Polynomial> comps;
  for (int k = 0; k < n; ++k) {
    Polynomial p(n);
    for (int dx = 0; dx <= max_degree; ++dx) {
      for (int dy = 0; dx + dy <= max_degree; ++dy) {
        Polynomial m = Polynomial::constant(n, testutil::random_small_rat(g));
        for (int r = 0; r < dx; ++r) m = m * Polynomial::variable(n, 0);
        for (int r = 0; r < dy; ++r) m = m * Polynomial::variable(n, 1);
        p = p + m;
      }
    }
    comps.push_back(p);
  }
  return PolyVectorField(n, comps);
}

}  // namespace

TEST_CASE("polynomial parsing, printing, and arithmetic agree") {
  Polynomial p = Polynomial::parse("x1^2*x2 + 3/2", 2);
  CHECK(p.degree() == 3);
  CHECK(p.coefficient({2, 1}) == Rat(1));
  CHECK(p.coefficient({0, 0}) == Rat(3, 2));
  CHECK(p.evaluate({Rat(2), Rat(3)}) == Rat(27, 2));

  CHECK(Polynomial::parse("2^3", 1) == Polynomial::constant(1, Rat(8)));
  CHECK(Polynomial::parse("(x1 + 1)^2", 1) ==
        Polynomial::parse("x1^2 + 2*x1 + 1", 1));
  CHECK(Polynomial::parse("-x1 - -2", 1) == Polynomial::parse("2 - x1", 1));
  CHECK(Polynomial::parse("0", 3).is_zero());
  CHECK(Polynomial::parse("x1*x1*x1", 1) == Polynomial::parse("x1^3", 1));

  // Derivatives are exact and drop constants.
  CHECK(p.derivative(0) == Polynomial::parse("2*x1*x2", 2));
  CHECK(p.derivative(1) == Polynomial::parse("x1^2", 2));
  CHECK(Polynomial::constant(2, Rat(5)).derivative(0).is_zero());

  // str() round-trips through parse.
  for (const char* text : {"x1^2*x2 + 3/2", "-x1 + x2^4", "1/3 - x2*x1", "0"}) {
    Polynomial q = Polynomial::parse(text, 2);
    CHECK(Polynomial::parse(q.str(), 2) == q);
  }

  CHECK_THROWS_AS(Polynomial::parse("x3", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("x", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("1/0", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("x1 +", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("(x1", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("x1 x2", 2), PolyParseError);
  CHECK_THROWS_AS(Polynomial::parse("x1^x2", 2), PolyParseError);
}

TEST_CASE("vector field brackets match the hand-computed examples") {
  // Constant fields commute.
  PolyVectorField dx = PolyVectorField::parse(3, {"1", "0", "0"});
  PolyVectorField dy = PolyVectorField::parse(3, {"0", "1", "0"});
  CHECK(bracket(dx, dy).is_zero());

  // One differentiation: [d/dx, x d/dz] = d/dz.
  PolyVectorField xdz = PolyVectorField::parse(3, {"0", "0", "x1"});
  CHECK(bracket(dx, xdz) == PolyVectorField::parse(3, {"0", "0", "1"}));

  // [d/dx + y d/dz, d/dy] = -d/dz.
  PolyVectorField f = PolyVectorField::parse(3, {"1", "0", "x2"});
  CHECK(bracket(f, dy) == PolyVectorField::parse(3, {"0", "0", "-1"}));

  CHECK_THROWS_AS(bracket(dx, PolyVectorField::parse(2, {"1", "0"})),
                  std::invalid_argument);
  CHECK_THROWS_AS(PolyVectorField::parse(3, {"1", "0"}), std::invalid_argument);
}

TEST_CASE("brackets are antisymmetric and satisfy Jacobi") {
  // Exhaustive over monomial fields of degree <= 2 on Q^2 for antisymmetry,
  // a deterministic sample of triples for Jacobi.
  std::vector<PolyVectorField> fields = monomial_fields(2);
  for (const PolyVectorField& x : fields) {
    CHECK(bracket(x, x).is_zero());
    for (const PolyVectorField& y : fields) {
      PolyVectorField xy = bracket(x, y);
      PolyVectorField yx = bracket(y, x);
      for (int k = 0; k < 2; ++k)
        CHECK((xy.components[k] + yx.components[k]).is_zero());
    }
  }
  auto g = testutil::rng(20260816);
  for (int trial = 0; trial < 12; ++trial) {
    PolyVectorField x = random_field(g, 3, 2);
    PolyVectorField y = random_field(g, 3, 2);
    PolyVectorField z = random_field(g, 3, 2);
    PolyVectorField jac = bracket(bracket(x, y), z);
    PolyVectorField cyc = bracket(bracket(y, z), x);
    PolyVectorField rot = bracket(bracket(z, x), y);
    for (int k = 0; k < 3; ++k)
      CHECK((jac.components[k] + cyc.components[k] + rot.components[k]).is_zero());
  }
}

TEST_CASE("weak derived flags grow to the expected dimensions") {
  // Contact distribution: one bracket fills Q^3, at the origin and beyond.
  std::vector<Subspace> flag = weak_derived_flag(contact3(), origin(3));
  REQUIRE(flag.size() == 2);
  CHECK(flag[0].dim() == 2);
  CHECK(flag[1].dim() == 3);
  std::vector<Subspace> moved =
      weak_derived_flag(contact3(), {Rat(1), Rat(5), Rat(-2)});
  REQUIRE(moved.size() == 2);
  CHECK(moved[1].dim() == 3);

  // Involutive distributions stabilize immediately.
  DistributionSpec invol(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                             PolyVectorField::parse(3, {"0", "1", "0"})});
  std::vector<Subspace> stable = weak_derived_flag(invol, origin(3));
  REQUIRE(stable.size() == 1);
  CHECK(stable[0].dim() == 2);

  // The rank-2 model needs two bracket levels: dims (2, 3, 5).
  std::vector<Subspace> growth = weak_derived_flag(model235(), origin(5));
  REQUIRE(growth.size() == 3);
  CHECK(growth[0].dim() == 2);
  CHECK(growth[1].dim() == 3);
  CHECK(growth[2].dim() == 5);

  // The cap truncates without judging completeness.
  CHECK(weak_derived_flag(model235(), origin(5), 2).size() == 2);

  // Dependent spanning fields are a per-point error.
  DistributionSpec dep(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                           PolyVectorField::parse(3, {"x1", "0", "0"})});
  CHECK_THROWS_AS(weak_derived_flag(dep, origin(3)), DependentAtPoint);
  CHECK_THROWS_AS(weak_derived_flag(dep, {Rat(1), Rat(0), Rat(0)}), DependentAtPoint);

  CHECK_THROWS_AS(weak_derived_flag(contact3(), origin(2)), std::invalid_argument);
  CHECK_THROWS_AS(weak_derived_flag(contact3(), origin(3), 0), std::invalid_argument);
}

TEST_CASE("the contact model's symbol is the heisenberg algebra") {
  NilpotentSymbol sym = symbol_at(contact3(), origin(3));
  CHECK(sym == build_heisenberg(3));
  CHECK(sym.validate().ok());
  CHECK(growth_vector(sym) == std::vector<int>{2, 3});

  // Sample points with the same growth pass the constancy probe.
  std::vector<Vec> samples = {{Rat(1), Rat(2), Rat(3)},
                              {Rat(-1), Rat(1, 2), Rat(0)}};
  CHECK(symbol_at(contact3(), origin(3), samples) == build_heisenberg(3));
}

TEST_CASE("involutive and full distributions give commutative symbols") {
  DistributionSpec invol(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                             PolyVectorField::parse(3, {"0", "1", "0"})});
  CHECK(symbol_at(invol, origin(3)) == build_commutative(2));

  DistributionSpec full(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                            PolyVectorField::parse(3, {"0", "1", "0"}),
                            PolyVectorField::parse(3, {"0", "0", "1"})});
  CHECK(symbol_at(full, origin(3)) == build_commutative(3));
}

TEST_CASE("the rank-2 model's symbol is free nilpotent of step 3") {
  NilpotentSymbol sym = symbol_at(model235(), origin(5));
  CHECK(sym.validate().ok());
  CHECK(sym.layer_dims() == std::vector<int>{2, 1, 2});
  CHECK(growth_vector(sym) == std::vector<int>{2, 3, 5});
  CHECK(sym.layer_dims() == build_free_nilpotent(2, 3).layer_dims());

  // Growth vector equals the dimension jumps of the weak derived flag.
  std::vector<Subspace> flag = weak_derived_flag(model235(), origin(5));
  std::vector<int> jumps;
  for (const Subspace& s : flag) jumps.push_back(s.dim());
  CHECK(growth_vector(sym) == jumps);
}

TEST_CASE("constancy probing rejects rank changes across sample points") {
  // Brackets vanish at the origin but not at x1 = 1.
  DistributionSpec pinch(3, {PolyVectorField::parse(3, {"1", "0", "0"}),
                             PolyVectorField::parse(3, {"0", "1", "x1^2"})});
  NilpotentSymbol at_origin = symbol_at(pinch, origin(3));
  CHECK(at_origin == build_commutative(2));
  CHECK_THROWS_AS(symbol_at(pinch, origin(3), {{Rat(1), Rat(0), Rat(0)}}),
                  NonConstantRank);

  // A depth cap below the flag's depth is reported, not silently accepted;
  // the flag fills the space at level 3, so the cap of 3 already works.
  CHECK_THROWS_AS(symbol_at(model235(), origin(5), {}, 2), DepthCapExceeded);
  CHECK(symbol_at(model235(), origin(5), {}, 3).total_dim() == 5);
}
