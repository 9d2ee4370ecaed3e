#ifndef TANAKA_TEST_ALGEBRA_FIXTURES_HPP
#define TANAKA_TEST_ALGEBRA_FIXTURES_HPP

#include <vector>

#include "tanaka/matrix.hpp"
#include "tanaka/nilpotent.hpp"
#include "tanaka/prolong.hpp"

namespace tanaka::testutil {

/// Flat vectorization of all blocks of an Action, in block order. This is
/// the coordinate layout shared by prolongation components and the negative
/// part of Spencer domains.
inline Vec flatten_action(const Action& a) {
  Vec out;
  for (const Mat& b : a.blocks) {
    Vec v = b.vec();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// The grading derivation: i * identity on g^{-i}.
inline Action grading_element(const NilpotentSymbol& m) {
  Action d;
  d.degree = 0;
  for (int i = 1; i <= m.depth(); ++i)
    d.blocks.push_back(Rat(i) * Mat::identity(m.dim(-i)));
  return d;
}

/// The irreducible action of gl(2) on degree-n binary forms x^n, ..., y^n:
/// span of x d/dy, y d/dx, x d/dx - y d/dy, and the identity.
inline std::vector<Mat> irreducible_gl2(int n) {
  int dim = n + 1;  // basis x^(n-b) y^b, b = 0..n
  Mat e(dim, dim), f(dim, dim), h(dim, dim);
  for (int b = 0; b <= n; ++b) {
    if (b > 0) e.at(b - 1, b) = Rat(b);          // x d/dy
    if (b < n) f.at(b + 1, b) = Rat(n - b);      // y d/dx
    h.at(b, b) = Rat(n - 2 * b);                 // x d/dx - y d/dy
  }
  return {e, f, h, Mat::identity(dim)};
}

}  // namespace tanaka::testutil

#endif
