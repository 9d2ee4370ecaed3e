#include "tanaka/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace tanaka {

Polynomial::Polynomial(int n_vars) : n_(n_vars) {
  if (n_vars < 0) throw std::invalid_argument("polynomial needs n_vars >= 0");
}

Polynomial Polynomial::constant(int n_vars, const Rat& c) {
  Polynomial p(n_vars);
  p.add_term(std::vector<int>(n_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars)
    throw std::invalid_argument("variable index out of range");
  Polynomial p(n_vars);
  std::vector<int> e(n_vars, 0);
  e[index] = 1;
  p.add_term(e, Rat(1));
  return p;
}

void Polynomial::add_term(const std::vector<int>& exponents, const Rat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int total = 0;
    for (int k : e) total += k;
    if (total > deg) deg = total;
  }
  return deg;
}

Rat Polynomial::coefficient(const std::vector<int>& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial variable counts differ");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial variable counts differ");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial variable counts differ");
  Polynomial out(n_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(n_);
      for (int k = 0; k < n_; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Polynomial operator*(const Rat& c, const Polynomial& p) {
  Polynomial out(p.n_);
  if (c.is_zero()) return out;
  for (const auto& [e, pc] : p.terms_) out.terms_.emplace(e, c * pc);
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= n_) throw std::invalid_argument("variable index out of range");
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    d[var] -= 1;
    out.add_term(d, Rat(e[var]) * c);
  }
  return out;
}

Rat Polynomial::evaluate(const Vec& point) const {
  if (int(point.size()) != n_)
    throw std::invalid_argument("evaluation point has the wrong dimension");
  Rat total;
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (int k = 0; k < n_; ++k)
      for (int rep = 0; rep < e[k]; ++rep) term *= point[k];
    total += term;
  }
  return total;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat coeff = c;
    if (first) {
      first = false;
    } else if (coeff.sign() < 0) {
      os << " - ";
      coeff = -coeff;
    } else {
      os << " + ";
    }
    std::string monomial;
    for (int k = 0; k < n_; ++k) {
      if (e[k] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += "x" + std::to_string(k + 1);
      if (e[k] > 1) monomial += "^" + std::to_string(e[k]);
    }
    if (monomial.empty()) {
      os << coeff.str();
    } else if (coeff == Rat(1)) {
      os << monomial;
    } else if (coeff == Rat(-1)) {
      os << "-" << monomial;
    } else {
      os << coeff.str() << "*" << monomial;
    }
  }
  return os.str();
}

namespace {

// Recursive-descent parser over the documented grammar:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' digits)?
//   atom   := '(' expr ')' | digits ('/' digits)? | 'x' digits
struct PolyParser {
  const std::string& text;
  int n;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw PolyParseError(what + " at offset " + std::to_string(pos) + " in \"" +
                         text + "\"");
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected digits");
    return text.substr(start, pos - start);
  }

  Polynomial atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (eat('(')) {
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    char c = text[pos];
    if (c == 'x') {
      ++pos;
      std::string idx = digits();
      if (idx.size() > 6) fail("variable index too large");
      int v = std::stoi(idx);
      if (v < 1 || v > n) fail("unknown variable x" + idx + " (have x1..x" +
                               std::to_string(n) + ")");
      return Polynomial::variable(n, v - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string lit = num;
      if (eat('/')) lit += "/" + digits();
      Rat value;
      try {
        value = Rat::parse(lit);
      } catch (const BadRational&) {
        fail("bad rational literal " + lit);
      }
      return Polynomial::constant(n, value);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (eat('^')) {
      std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      int k = std::stoi(e);
      Polynomial out = Polynomial::constant(n, Rat(1));
      for (int rep = 0; rep < k; ++rep) out = out * base;
      return out;
    }
    return base;
  }

  Polynomial term() {
    Polynomial out = factor();
    while (eat('*')) out = out * factor();
    return out;
  }

  Polynomial signed_term() {
    bool negate = false;
    while (eat('-')) negate = !negate;
    Polynomial out = term();
    return negate ? -out : out;
  }

  Polynomial expr() {
    Polynomial out = signed_term();
    for (;;) {
      if (eat('+')) {
        out = out + signed_term();
      } else if (eat('-')) {
        out = out - signed_term();
      } else {
        return out;
      }
    }
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n_vars) {
  if (n_vars < 0) throw std::invalid_argument("polynomial needs n_vars >= 0");
  PolyParser parser{text, n_vars};
  Polynomial out = parser.expr();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return out;
}

}  // namespace tanaka
