#include <set>

#include "doctest.h"
#include "tanaka/nilpotent.hpp"
#include "test_helpers.hpp"

using namespace tanaka;

namespace {

// Independent count of Lyndon words of length k over l letters: enumerate
// all words and test the strict-suffix characterization directly.
long lyndon_count_brute(int l, int k) {
  long count = 0;
  std::vector<int> w(k, 0);
  while (true) {
    bool lyndon = true;
    for (int s = 1; s < k && lyndon; ++s) {
      // compare w with its suffix starting at s
      int cmp = 0;
      for (int t = 0; s + t < k; ++t) {
        if (w[t] != w[s + t]) {
          cmp = w[t] < w[s + t] ? -1 : 1;
          break;
        }
      }
      if (cmp == 0) cmp = 1;  // prefix of suffix: w is not smaller
      if (cmp >= 0) lyndon = false;
    }
    if (lyndon) ++count;
    int pos = k - 1;
    while (pos >= 0 && w[pos] == l - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return count;
}

}  // namespace

TEST_CASE("commutative symbol") {
  auto m = build_commutative(4);
  CHECK(m.depth() == 1);
  CHECK(m.total_dim() == 4);
  CHECK(m.validate().ok());
  CHECK(is_zero(m.bracket(-1, 0, -1, 1)));
  CHECK(growth_vector(m) == std::vector<int>{4});
  CHECK_FALSE(m.pairing().has_value());
}

TEST_CASE("heisenberg symbol") {
  auto m = build_heisenberg(5);
  CHECK(m.depth() == 2);
  CHECK(m.dim(-1) == 4);
  CHECK(m.dim(-2) == 1);
  CHECK(m.validate().ok());
  CHECK(growth_vector(m) == std::vector<int>{4, 5});

  // [x_a, y_a] = z, all other pairs zero; antisymmetry filled in.
  CHECK(m.bracket(-1, 0, -1, 2) == Vec{Rat(1)});
  CHECK(m.bracket(-1, 2, -1, 0) == Vec{Rat(-1)});
  CHECK(m.bracket(-1, 1, -1, 3) == Vec{Rat(1)});
  CHECK(is_zero(m.bracket(-1, 0, -1, 1)));
  CHECK(is_zero(m.bracket(-1, 0, -1, 3)));

  // The attached pairing is the standard symplectic form.
  auto omega = m.pairing();
  REQUIRE(omega.has_value());
  CHECK(omega->at(0, 2) == Rat(1));
  CHECK(omega->at(2, 0) == Rat(-1));
  CHECK(rank(*omega) == 4);
  CHECK(omega->transpose() == -*omega);

  CHECK_THROWS_AS(build_heisenberg(4), EvenDim);
  CHECK_THROWS_AS(build_heisenberg(1), EvenDim);
}

TEST_CASE("witt dimensions against brute-force lyndon count") {
  for (int l = 2; l <= 3; ++l)
    for (int k = 1; k <= (l == 2 ? 8 : 5); ++k)
      CHECK(witt_dimension(l, k) == lyndon_count_brute(l, k));
}

TEST_CASE("free nilpotent layer dimensions match the witt formula") {
  for (int l = 2; l <= 3; ++l)
    for (int mu = 1; mu <= (l == 2 ? 5 : 4); ++mu) {
      auto m = build_free_nilpotent(l, mu);
      CAPTURE(l);
      CAPTURE(mu);
      CHECK(m.depth() == mu);
      for (int k = 1; k <= mu; ++k) CHECK(m.dim(-k) == witt_dimension(l, k));
      CHECK(m.validate().ok());
    }
}

TEST_CASE("free nilpotent on 2 generators, depth 3: explicit table") {
  // Basis per layer: {x, y}, {[x,y]}, {[x,[x,y]], [[x,y],y]} in Lyndon order
  // (words 0, 1; 01; 001, 011). Hall-basis structure constants are classical.
  auto m = build_free_nilpotent(2, 3);
  CHECK(m.layer_dims() == std::vector<int>{2, 1, 2});
  CHECK(m.total_dim() == 5);
  CHECK(growth_vector(m) == std::vector<int>{2, 3, 5});

  // [x, y] = the degree -2 generator.
  CHECK(m.bracket(-1, 0, -1, 1) == Vec{Rat(1)});
  // [x, [x,y]] = first degree -3 word (001); [y, [x,y]] = -(011).
  CHECK(m.bracket(-1, 0, -2, 0) == Vec{Rat(1), Rat(0)});
  CHECK(m.bracket(-1, 1, -2, 0) == Vec{Rat(0), Rat(-1)});
}

TEST_CASE("bracket_vectors is bilinear and antisymmetric") {
  auto m = build_free_nilpotent(2, 4);
  auto gen = testutil::rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    int i = -1 - int(gen() % 2);
    int j = -1 - int(gen() % 2);
    Vec x = testutil::random_vec(gen, m.dim(i));
    Vec y = testutil::random_vec(gen, m.dim(j));
    Vec z = testutil::random_vec(gen, m.dim(j));
    Rat c = testutil::random_small_rat(gen);

    Vec lhs = m.bracket_vectors(i, x, j, y + z);
    Vec rhs = m.bracket_vectors(i, x, j, y) + m.bracket_vectors(i, x, j, z);
    CHECK(lhs == rhs);

    Vec scaled = m.bracket_vectors(i, x, j, c * y);
    CHECK(scaled == c * m.bracket_vectors(i, x, j, y));

    Vec ab = m.bracket_vectors(i, x, j, y);
    Vec ba = m.bracket_vectors(j, y, i, x);
    CHECK(ab == -ba);
  }
}

TEST_CASE("constructor rejects malformed tables") {
  using E = NilpotentSymbol::BracketEntry;
  // Wrong target dimension.
  CHECK_THROWS_AS(NilpotentSymbol({2, 1}, {E{-1, 0, -1, 1, Vec{Rat(1), Rat(1)}}}),
                  std::invalid_argument);
  // Conflicting duplicate declarations.
  CHECK_THROWS_AS(NilpotentSymbol({2, 1}, {E{-1, 0, -1, 1, Vec{Rat(1)}},
                                           E{-1, 1, -1, 0, Vec{Rat(1)}}}),
                  std::invalid_argument);
  // Self-bracket must be zero.
  CHECK_THROWS_AS(NilpotentSymbol({2, 1}, {E{-1, 0, -1, 0, Vec{Rat(1)}}}),
                  std::invalid_argument);
  // Index out of range.
  CHECK_THROWS_AS(NilpotentSymbol({2, 1}, {E{-1, 0, -1, 2, Vec{Rat(1)}}}),
                  std::invalid_argument);
  // Consistent duplicate is fine.
  CHECK_NOTHROW(NilpotentSymbol({2, 1}, {E{-1, 0, -1, 1, Vec{Rat(1)}},
                                         E{-1, 1, -1, 0, Vec{Rat(-1)}}}));
}

TEST_CASE("validate flags jacobi and fundamentality failures") {
  using E = NilpotentSymbol::BracketEntry;
  // Depth 2 with dim(-2)=1 but zero bracket: not fundamental, jacobi fine.
  NilpotentSymbol not_fund({2, 1}, {});
  auto c1 = not_fund.validate();
  CHECK(c1.jacobi);
  CHECK_FALSE(c1.fundamental);
  CHECK_FALSE(c1.ok());

  // Depth 4 table where Jacobi fails at (x, y, w):
  // [x,[y,w]] + [y,[w,x]] + [w,[x,y]] = [x,w'] - [y,w'] + 0 = w'' != 0.
  NilpotentSymbol bad({2, 1, 1, 1},
                      {E{-1, 0, -1, 1, Vec{Rat(1)}},    // [x,y] = w
                       E{-1, 0, -2, 0, Vec{Rat(1)}},    // [x,w] = w'
                       E{-1, 1, -2, 0, Vec{Rat(1)}},    // [y,w] = w'
                       E{-1, 0, -3, 0, Vec{Rat(1)}}});  // [x,w'] = w''
  auto c2 = bad.validate();
  CHECK_FALSE(c2.jacobi);
}
