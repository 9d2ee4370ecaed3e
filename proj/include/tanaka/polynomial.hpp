#ifndef TANAKA_POLYNOMIAL_HPP
#define TANAKA_POLYNOMIAL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tanaka/rational.hpp"

namespace tanaka {

/// Malformed polynomial text (unknown variable, stray character, bad
/// exponent). Carries the offset of the offending character in the input.
struct PolyParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact polynomial over Q in variables x1..xn, stored sparsely by
/// exponent vector with nonzero coefficients only, so structural equality
/// is polynomial equality.
class Polynomial {
public:
  /// The zero polynomial in n variables.
  explicit Polynomial(int n_vars);
  static Polynomial constant(int n_vars, const Rat& c);
  /// The variable x_{index+1} (index is 0-based, 0 <= index < n_vars).
  static Polynomial variable(int n_vars, int index);

  /// Grammar: sums and differences of products of powers, with parentheses,
  /// unary minus, rational literals ("3", "5/2") and variables x1..xn.
  /// Exponents are nonnegative integer literals after '^'. Whitespace is
  /// ignored. Throws PolyParseError on malformed input.
  static Polynomial parse(const std::string& text, int n_vars);

  int n_vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Coefficient of the monomial with the given exponents (zero if absent).
  Rat coefficient(const std::vector<int>& exponents) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  friend Polynomial operator*(const Rat& c, const Polynomial& p);

  Polynomial derivative(int var) const;
  Rat evaluate(const Vec& point) const;

  /// Deterministic text form, parseable by parse(): terms in the fixed
  /// internal order, e.g. "3/2*x2^2 - x1*x2 + 1".
  std::string str() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
  void add_term(const std::vector<int>& exponents, const Rat& c);

  int n_;
  std::map<std::vector<int>, Rat> terms_;
};

}  // namespace tanaka

#endif
