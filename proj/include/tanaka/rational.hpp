#ifndef TANAKA_RATIONAL_HPP
#define TANAKA_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tanaka {

/// Error for malformed scalar input (zero denominator, unparseable string).
struct BadRational : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact rational scalar.
///
/// Thin strong type over GMP's mpq_class. Every value is kept canonical:
/// reduced to lowest terms with positive denominator. The wrapper exists
/// because mpq_class(n, d) does NOT canonicalize on its own, and comparison
/// of non-canonical mpq values is undefined behaviour waiting to happen.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long num, long den) {
    if (den == 0) throw BadRational("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  /// Parses "n", "-n", "n/d" (base 10). Whitespace is not accepted.
  static Rat parse(const std::string& s);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(-v_); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw BadRational("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inverse() const {
    if (is_zero()) throw BadRational("inverse of zero");
    return Rat(1 / v_);
  }

  /// Canonical text form: "n" for integers, "n/d" otherwise.
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

/// Coordinate vector over Q.
using Vec = std::vector<Rat>;

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rat& c, const Vec& v);
/// y += c*x, sizes must match.
void axpy(const Rat& c, const Vec& x, Vec& y);
/// Standard basis vector e_i of Q^n.
Vec unit_vec(int n, int i);

}  // namespace tanaka

#endif
