#pragma once
// Sparse multivariate polynomials with rational coefficients and
// quotients of them.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"

namespace nilorb {

using Monomial = std::vector<std::uint8_t>;

// Graded lexicographic: higher total degree first, then lex.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

class XPolynomial {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  explicit XPolynomial(int nvars = 0) : nvars_(nvars) {}
  static XPolynomial constant(int nvars, const Rational& c) {
    XPolynomial p(nvars);
    if (!nilorb::is_zero(c)) p.terms_[Monomial(nvars, 0)] = c;
    return p;
  }
  static XPolynomial variable(int nvars, int v) {
    if (v < 0 || v >= nvars) throw std::out_of_range("variable index out of range");
    XPolynomial p(nvars);
    Monomial m(nvars, 0);
    m[v] = 1;
    p.terms_[m] = 1;
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (auto e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
    return d;
  }
  bool depends_on(int v) const { return degree_in(v) > 0; }
  std::vector<int> variables() const {
    std::vector<int> out;
    for (int v = 0; v < nvars_; ++v)
      if (depends_on(v)) out.push_back(v);
    return out;
  }
  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
  }

  // Coefficient of v^e, as a polynomial in the remaining variables.
  XPolynomial coefficient(int v, int e) const {
    XPolynomial out(nvars_);
    for (const auto& [m, c] : terms_)
      if (m[v] == e) {
        Monomial k = m;
        k[v] = 0;
        out.terms_[k] += c;
      }
    out.prune();
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial length mismatch");
    auto& slot = terms_[m];
    slot += c;
    if (nilorb::is_zero(slot)) terms_.erase(m);
  }

  XPolynomial& operator+=(const XPolynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  XPolynomial& operator-=(const XPolynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend XPolynomial operator+(XPolynomial a, const XPolynomial& b) { return a += b; }
  friend XPolynomial operator-(XPolynomial a, const XPolynomial& b) { return a -= b; }
  XPolynomial operator-() const {
    XPolynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend XPolynomial operator*(const XPolynomial& a, const XPolynomial& b) {
    a.check(b);
    XPolynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
        r.terms_[m] += ca * cb;
      }
    r.prune();
    return r;
  }
  friend XPolynomial operator*(const Rational& s, XPolynomial p) {
    if (nilorb::is_zero(s)) return XPolynomial(p.nvars_);
    for (auto& [m, c] : p.terms_) c *= s;
    return p;
  }
  XPolynomial pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    XPolynomial r = constant(nvars_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  friend bool operator==(const XPolynomial& a, const XPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const XPolynomial& a, const XPolynomial& b) { return !(a == b); }

  Rational evaluate(const std::vector<Rational>& pt) const {
    if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m[i]; ++k) t *= pt[i];
      s += t;
    }
    return s;
  }

  // Multiplies every variable v by sign[v] (+1 or -1).
  XPolynomial sign_substitute(const std::vector<int>& sign) const {
    XPolynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      int s = 1;
      for (int i = 0; i < nvars_; ++i)
        if (sign[i] == -1 && (m[i] & 1)) s = -s;
      r.terms_[m] = s == 1 ? c : Rational(-c);
    }
    return r;
  }

  std::string to_string(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      Rational a = abs(c);
      bool neg = sgn(c) < 0;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      bool unit = a == 1;
      bool any = false;
      if (!unit) out += a.get_str();
      for (int i = 0; i < nvars_; ++i) {
        if (!m[i]) continue;
        if (!unit || any) out += "*";
        out += name(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
        any = true;
      }
      if (unit && !any) out += "1";
    }
    return out;
  }

 private:
  void check(const XPolynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = nilorb::is_zero(it->second) ? terms_.erase(it) : std::next(it);
  }
  int nvars_;
  Terms terms_;
};

// num / den with den nonzero; compared by cross-multiplication.
struct RationalFunction {
  XPolynomial num, den;

  static RationalFunction of(XPolynomial p) {
    int n = p.nvars();
    return {std::move(p), XPolynomial::constant(n, 1)};
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num.is_zero()) throw std::domain_error("division by the zero polynomial");
    return {a.num * b.den, a.den * b.num};
  }
  RationalFunction operator-() const { return {-num, den}; }
  RationalFunction pow(int e) const { return {num.pow(e), den.pow(e)}; }
  bool equals(const RationalFunction& o) const { return num * o.den == o.num * den; }
};

}  // namespace nilorb
