#include "tanaka/rational.hpp"

#include <cassert>
#include <ostream>

namespace tanaka {

Rat Rat::parse(const std::string& s) {
  if (s.empty()) throw BadRational("empty rational literal");
  // mpq_class::set_str accepts leading '+'/'-' and an optional "/den" part,
  // but silently tolerates some garbage; validate shape first.
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string body = s;
  if (body[0] == '+' || body[0] == '-') body = body.substr(1);
  auto slash = body.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = digits(body);
  } else {
    ok = digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  }
  if (!ok) throw BadRational("malformed rational literal: " + s);
  // GMP's set_str rejects a leading '+', which we accept.
  std::string gmp_form = (s[0] == '+') ? s.substr(1) : s;
  mpq_class v;
  if (v.set_str(gmp_form, 10) != 0)
    throw BadRational("malformed rational literal: " + s);
  if (v.get_den() == 0) throw BadRational("rational with zero denominator: " + s);
  v.canonicalize();
  Rat r;
  r.v_ = v;
  return r;
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

bool is_zero(const Vec& v) {
  for (const Rat& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a);
  for (Rat& x : r) x = -x;
  return r;
}

Vec operator*(const Rat& c, const Vec& v) {
  Vec r(v);
  for (Rat& x : r) x *= c;
  return r;
}

void axpy(const Rat& c, const Vec& x, Vec& y) {
  assert(x.size() == y.size());
  if (c.is_zero()) return;
  for (size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

Vec unit_vec(int n, int i) {
  assert(0 <= i && i < n);
  Vec v(n, Rat(0));
  v[i] = Rat(1);
  return v;
}

}  // namespace tanaka
