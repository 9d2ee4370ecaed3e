#include "algebra_fixtures.hpp"
#include "doctest.h"
#include "tanaka/derivations.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/prolong.hpp"
#include "test_helpers.hpp"

using namespace tanaka;
using testutil::flatten_action;
using testutil::grading_element;
using testutil::irreducible_gl2;

namespace {

Mat mat3(std::initializer_list<std::initializer_list<int>> rows) {
  Mat m(3, 3);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m.at(i, j++) = Rat(v);
    ++i;
  }
  return m;
}

// Coordinates of an action in the basis of its component, solved on the
// full flat vectors (independent of the library's g^{-1}-block shortcut).
Vec coords_in_component(const ProlongedAlgebra& u, const Action& a) {
  std::vector<Vec> rows;
  for (const Action& e : u.component(a.degree)) rows.push_back(flatten_action(e));
  Vec target = flatten_action(a);
  Mat basis = Mat::from_rows(rows, int(target.size()));
  AffineSolution sol = solve_affine(basis.transpose(), target);
  REQUIRE(sol.solvable);
  return sol.particular;
}

}  // namespace

TEST_CASE("full contact symbol over heis(3) prolongs to the infinite contact algebra") {
  // Graded dims are counts of monomials of weighted degree k+2 in x, y
  // (weight 1) and z (weight 2): no finite termination exists.
  NilpotentSymbol m = build_heisenberg(3);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 4);
  CHECK(u.status() == ProlongStatus::Capped);
  CHECK(u.max_degree() == 4);
  int expect[] = {4, 6, 9, 12, 16};
  for (int k = 0; k <= 4; ++k) CHECK(u.dim(k) == expect[k]);
  CHECK_THROWS_AS(u.dim(5), std::out_of_range);
  CHECK(u.verification().ok());
}

TEST_CASE("full contact symbol over heis(5) grows the same way") {
  NilpotentSymbol m = build_heisenberg(5);
  ProlongedAlgebra u = tanaka_prolong(m, restrict_to_csp(m, *m.pairing()), 1);
  CHECK(u.status() == ProlongStatus::Capped);
  CHECK(u.dim(0) == 11);
  CHECK(u.dim(1) == 24);  // cubics in four variables plus z times a linear form
  CHECK(u.verification().ok());
}

TEST_CASE("euclidean and conformal prolongations over Q^3") {
  NilpotentSymbol m = build_commutative(3);
  std::vector<Mat> so3 = {mat3({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}),
                          mat3({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
                          mat3({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}})};
  ProlongedAlgebra euclid = tanaka_prolong(m, restrict_to_custom(m, so3), 5);
  CHECK(euclid.status() == ProlongStatus::Terminated);
  CHECK(euclid.terminated_at() == 0);
  CHECK(euclid.total_dim() == 6);
  CHECK(euclid.verification().ok());

  std::vector<Mat> co3 = so3;
  co3.push_back(Mat::identity(3));
  ProlongedAlgebra conf = tanaka_prolong(m, restrict_to_custom(m, co3), 5);
  CHECK(conf.status() == ProlongStatus::Terminated);
  CHECK(conf.terminated_at() == 1);
  CHECK(conf.dim(0) == 4);
  CHECK(conf.dim(1) == 3);
  CHECK(conf.dim(2) == 0);
  CHECK(conf.total_dim() == 10);
  CHECK(conf.verification().ok());
}

TEST_CASE("irreducible gl(2) on quadrics prolongs to the long-root grading of sp(4)") {
  NilpotentSymbol m = build_commutative(3);
  ProlongedAlgebra u = tanaka_prolong(m, restrict_to_custom(m, irreducible_gl2(2)), 6);
  CHECK(u.status() == ProlongStatus::Terminated);
  CHECK(u.terminated_at() == 1);
  CHECK(u.dim(-1) == 3);
  CHECK(u.dim(0) == 4);
  CHECK(u.dim(1) == 3);
  CHECK(u.total_dim() == 10);
  CHECK(u.verification().ok());
}

TEST_CASE("irreducible gl(2) on cubics and beyond has vanishing first prolongation") {
  for (int n = 3; n <= 5; ++n) {
    NilpotentSymbol m = build_commutative(n + 1);
    ProlongedAlgebra u = tanaka_prolong(m, restrict_to_custom(m, irreducible_gl2(n)), 4);
    CHECK(u.status() == ProlongStatus::Terminated);
    CHECK(u.terminated_at() == 0);
    CHECK(u.total_dim() == (n + 1) + 4);
    CHECK(u.verification().ok());
  }
}

TEST_CASE("free(2,3) with its full derivations prolongs to a 14-dimensional algebra") {
  // The split form of the exceptional rank-2 simple algebra carries a depth-3
  // grading with negative dims (2,1,2); the prolongation recovers the whole
  // of it: dims (2,1,2 | 4 | 2,1,2).
  NilpotentSymbol m = build_free_nilpotent(2, 3);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 10);
  CHECK(u.status() == ProlongStatus::Terminated);
  CHECK(u.terminated_at() == 3);
  CHECK(u.dim(0) == 4);
  CHECK(u.dim(1) == 2);
  CHECK(u.dim(2) == 1);
  CHECK(u.dim(3) == 2);
  CHECK(u.dim(4) == 0);
  CHECK(u.total_dim() == 14);
  CHECK(u.verification().ok());
}

TEST_CASE("prolongation of the full gl(2) is capped with polynomial growth") {
  NilpotentSymbol m = build_commutative(2);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 5);
  CHECK(u.status() == ProlongStatus::Capped);
  CHECK(u.max_degree() == 5);
  for (int k = 0; k <= 5; ++k) CHECK(u.dim(k) == 2 * (k + 2));
  CHECK_THROWS_AS(u.dim(6), std::out_of_range);
  CHECK(u.verification().ok());
  // Brackets beyond the cap are refused rather than guessed.
  Vec x = unit_vec(u.dim(3), 0), y = unit_vec(u.dim(4), 0);
  CHECK_THROWS_AS(u.bracket(3, x, 4, y), std::out_of_range);
}

TEST_CASE("grading element acts as minus the degree") {
  NilpotentSymbol m = build_heisenberg(3);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 3);
  Vec d = coords_in_component(u, grading_element(m));
  for (int deg = -m.depth(); deg <= u.max_degree(); ++deg)
    for (int t = 0; t < u.dim(deg); ++t) {
      Vec x = unit_vec(u.dim(deg), t);
      CHECK(u.bracket(0, d, deg, x) == Rat(-deg) * x);
    }
}

TEST_CASE("bracket is antisymmetric and exactly bilinear") {
  NilpotentSymbol m = build_free_nilpotent(2, 3);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 10);
  auto gen = testutil::rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> deg(-m.depth(), u.terminated_at());
    int d1 = deg(gen), d2 = deg(gen);
    Vec x = testutil::random_vec(gen, u.dim(d1));
    Vec y = testutil::random_vec(gen, u.dim(d2));
    Vec z = testutil::random_vec(gen, u.dim(d2));
    CHECK(u.bracket(d1, x, d2, y) == -u.bracket(d2, y, d1, x));
    CHECK(u.bracket(d1, x, d2, y + z) ==
          u.bracket(d1, x, d2, y) + u.bracket(d1, x, d2, z));
  }
}

TEST_CASE("empty degree-zero part terminates below zero") {
  NilpotentSymbol m = build_heisenberg(3);
  ProlongedAlgebra u = tanaka_prolong(m, restrict_to_custom(m, {}), 5);
  CHECK(u.status() == ProlongStatus::Terminated);
  CHECK(u.terminated_at() == -1);
  CHECK(u.dim(0) == 0);
  CHECK(u.dim(1) == 0);
  CHECK(u.total_dim() == m.total_dim());
  CHECK(u.verification().ok());
}

TEST_CASE("prolongation rejects mismatched or broken input") {
  NilpotentSymbol m = build_heisenberg(3);
  Subalgebra0 other = derivations0(build_heisenberg(5));
  CHECK_THROWS_AS(tanaka_prolong(m, other, 5), std::invalid_argument);
  // Non-fundamental symbol: two layers, no brackets.
  NilpotentSymbol bad({2, 1}, {});
  CHECK_THROWS_AS(tanaka_prolong(bad, derivations0(bad), 5), std::invalid_argument);
  CHECK_THROWS_AS(tanaka_prolong(m, derivations0(m), -1), std::invalid_argument);
}

TEST_CASE("component actions carry consistent shapes") {
  NilpotentSymbol m = build_heisenberg(3);
  ProlongedAlgebra u = tanaka_prolong(m, derivations0(m), 3);
  for (int k = 0; k <= u.max_degree(); ++k)
    for (const Action& a : u.component(k)) {
      CHECK(a.degree == k);
      REQUIRE(int(a.blocks.size()) == m.depth());
      for (int i = 1; i <= m.depth(); ++i) {
        CHECK(a.blocks[i - 1].cols() == m.dim(-i));
        CHECK(a.blocks[i - 1].rows() == u.dim(k - i));
      }
    }
}
