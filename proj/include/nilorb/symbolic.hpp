#pragma once
// Polynomials in the group coordinates x_a: the transport polynomials
// T_{a,b}, symbolic coordinates of exp(chi).lambda, a small expression
// language for identities between them, and the triangular elimination
// of x-variables.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "action.hpp"
#include "poly.hpp"

namespace nilorb {

// Variable layout: x_a is variable a, lambda_a is variable n + a.
struct VarLayout {
  int n;
  int nvars() const { return 2 * n; }
  int x(int a) const { return a; }
  int lam(int a) const { return n + a; }
  bool is_x(int v) const { return v < n; }
  std::string name(const RootSystem& rs, int v) const {
    return (is_x(v) ? "x[" + rs.name(v) : "lam[" + rs.name(v - n)) + "]";
  }
};

inline Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

namespace detail {

inline bool dominated(const Coeffs& a, const Coeffs& b) {
  for (int k = 0; k < 4; ++k)
    if (a[k] > b[k]) return false;
  return true;
}

inline void t_dfs(const StructureConstants& sc, int cur, int target, long long prod, int depth, Monomial& m,
                  XPolynomial& out) {
  const RootSystem& rs = sc.roots();
  if (cur == target) {
    Rational c(static_cast<long>(depth % 2 ? -prod : prod));
    c /= factorial(depth);
    out.add_term(m, c);
    return;
  }
  const Coeffs& tc = rs.root(target).coeffs;
  for (int g = 0; g < rs.size(); ++g) {
    int nxt = rs.sum(g, cur);
    if (nxt < 0 || !dominated(rs.root(nxt).coeffs, tc)) continue;
    ++m[g];
    t_dfs(sc, nxt, target, prod * sc.n(g, cur), depth + 1, m, out);
    --m[g];
  }
}

}  // namespace detail

// T_{a,b}(x) = (exp(chi).e_b^*)(e_a): a sum over ordered chains
// a = r_0, r_1 = r_0 + g_1, ..., r_k = b of (-1)^k / k! prod N_{g_i, r_{i-1}} x_{g_i}.
// Polynomials live in the 2n-variable layout so they combine with lambdas.
inline XPolynomial t_polynomial(const StructureConstants& sc, int a, int b) {
  const int n = sc.size();
  XPolynomial out(2 * n);
  if (!detail::dominated(sc.roots().root(a).coeffs, sc.roots().root(b).coeffs)) return out;
  Monomial m(2 * n, 0);
  detail::t_dfs(sc, a, b, 1, 0, m, out);
  return out;
}

// Same polynomial, computed by iterating ad(chi) on e_a with polynomial
// coefficients. Independent of the chain enumeration above.
inline XPolynomial t_polynomial_series(const StructureConstants& sc, int a, int b) {
  const RootSystem& rs = sc.roots();
  const int n = rs.size();
  const int nv = 2 * n;
  std::vector<XPolynomial> y(n, XPolynomial(nv));
  y[a] = XPolynomial::constant(nv, 1);
  XPolynomial out = y[b];
  for (int k = 1; k <= rs.highest_height(); ++k) {
    std::vector<XPolynomial> z(n, XPolynomial(nv));
    bool any = false;
    for (int c = 0; c < n; ++c) {
      if (y[c].is_zero()) continue;
      for (int g = 0; g < n; ++g) {
        int s = rs.sum(g, c);
        if (s < 0) continue;
        z[s] += Rational(sc.n(g, c)) * (XPolynomial::variable(nv, g) * y[c]);
        any = true;
      }
    }
    y = std::move(z);
    if (!any) break;
    Rational w = factorial(k);
    w = (k % 2 ? Rational(-1) : Rational(1)) / w;
    out += w * y[b];
  }
  return out;
}

enum class MuMode { group, tangent };

inline std::string to_string(MuMode m) { return m == MuMode::group ? "group" : "tangent"; }

// Coordinates of exp(chi).lambda (group) or chi.lambda (tangent) for a
// form with support D whose coordinates are the variables lambda_b, b in D.
inline std::vector<XPolynomial> mu_polynomials(const StructureConstants& sc, Support d, MuMode mode) {
  const int n = sc.size();
  VarLayout L{n};
  std::vector<XPolynomial> mu(n, XPolynomial(L.nvars()));
  for (int a = 0; a < n; ++a)
    for (int b : d.descending()) {
      if (mode == MuMode::group) {
        mu[a] += t_polynomial(sc, a, b) * XPolynomial::variable(L.nvars(), L.lam(b));
      } else {
        // -(lambda([chi, e_a]))
        for (int g = 0; g < n; ++g)
          if (sc.roots().sum(g, a) == b)
            mu[a] -= Rational(sc.n(g, a)) * (XPolynomial::variable(L.nvars(), L.x(g)) *
                                             XPolynomial::variable(L.nvars(), L.lam(b)));
      }
    }
  return mu;
}

// Coordinates of exp(chi).lambda for a concrete rational form.
inline std::vector<XPolynomial> mu_coordinates(const StructureConstants& sc, const LinearForm<Rational>& l) {
  if (!l.field.is_rational()) throw ArithmeticError("mu_coordinates needs a rational form");
  const int n = sc.size();
  std::vector<XPolynomial> mu(n, XPolynomial(2 * n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (!is_zero(l.c[b])) mu[a] += l.c[b] * t_polynomial(sc, a, b);
  return mu;
}

// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<XPolynomial> divide_exact(const XPolynomial& a, const XPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const int nv = a.nvars();
  XPolynomial q(nv), r = a;
  const auto& [lb, cb] = *b.terms().begin();
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().begin();
    Monomial m(nv);
    for (int i = 0; i < nv; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      m[i] = static_cast<std::uint8_t>(lr[i] - lb[i]);
    }
    XPolynomial t(nv);
    t.add_term(m, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Identity expressions.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'mu[' root ']' | 'lam[' root ']' | 'x[' root ']'
//           | 'T[' root ',' root ']' | '(' expr ')'
//
// Several expressions may be chained with '=' and every adjacent pair is
// checked.

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExprContext {
  const StructureConstants* sc;
  const std::vector<XPolynomial>* mu;
  Support support;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const ExprContext& ctx, std::string text) : ctx_(ctx), s_(std::move(text)) {}

  std::vector<RationalFunction> parse_chain() {
    std::vector<RationalFunction> out;
    out.push_back(expr());
    while (peek() == '=') {
      ++pos_;
      out.push_back(expr());
    }
    if (peek() != '\0') fail("unexpected character");
    return out;
  }
  RationalFunction parse_single() {
    auto r = expr();
    if (peek() != '\0') fail("unexpected character");
    return r;
  }

 private:
  int nv() const { return 2 * ctx_.sc->size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  char peek() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  RationalFunction constant(const Rational& c) const { return RationalFunction::of(XPolynomial::constant(nv(), c)); }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        acc = acc / unary();
      } else {
        return acc;
      }
    }
  }
  RationalFunction unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }
  RationalFunction power() {
    RationalFunction base = atom();
    if (peek() == '^') {
      ++pos_;
      peek();
      int e = integer();
      base = base.pow(e);
    }
    return base;
  }
  int integer() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(s_.substr(start, pos_ - start));
  }
  std::string ident() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  int root_until(char stop) {
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != stop && s_[pos_] != ']') ++pos_;
    if (pos_ >= s_.size()) fail("unterminated root name");
    try {
      return ctx_.sc->roots().parse(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  RationalFunction atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(integer());
    std::string id = ident();
    if (id.empty()) fail("expected an operand");
    expect('[');
    VarLayout L{ctx_.sc->size()};
    if (id == "T") {
      int a = root_until(',');
      expect(',');
      int b = root_until(']');
      expect(']');
      return RationalFunction::of(t_polynomial(*ctx_.sc, a, b));
    }
    int r = root_until(']');
    expect(']');
    if (id == "x") return RationalFunction::of(XPolynomial::variable(nv(), L.x(r)));
    if (id == "lam") {
      if (!ctx_.support.contains(r)) return constant(0);
      return RationalFunction::of(XPolynomial::variable(nv(), L.lam(r)));
    }
    if (id == "mu") return RationalFunction::of((*ctx_.mu)[r]);
    fail("unknown symbol '" + id + "'");
  }

  const ExprContext& ctx_;
  std::string s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<RationalFunction> parse_chain(const ExprContext& ctx, const std::string& text) {
  return detail::ExprParser(ctx, text).parse_chain();
}
inline RationalFunction parse_expression(const ExprContext& ctx, const std::string& text) {
  return detail::ExprParser(ctx, text).parse_single();
}

enum class IdentityKind { equation, span_condition };

// One checkable statement about a support. For an equation, `equation`
// holds a '='-chain. For a span condition, the tangent coordinate at
// `target` lies in the span of the coordinates at `span` exactly when
// `condition` vanishes. `twist` lists the roots whose basis vectors are
// negated relative to the shipped constants.
struct IdentitySpec {
  std::string id;
  SystemKind system = SystemKind::F4;
  std::vector<std::string> support;
  MuMode mode = MuMode::group;
  IdentityKind kind = IdentityKind::equation;
  std::string equation;
  std::string target;
  std::vector<std::string> span;
  std::string condition;
  std::vector<std::string> twist;
  std::string description;
};

struct IdentityResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

inline SignTwist twist_vector(const RootSystem& rs, const std::vector<std::string>& names) {
  SignTwist s(rs.size(), 1);
  for (const auto& nm : names) s.at(rs.parse(nm)) = -1;
  return s;
}

namespace detail {

inline XPolynomial det(std::vector<std::vector<XPolynomial>> m) {
  const int k = static_cast<int>(m.size());
  if (k == 1) return m[0][0];
  const int nv = m[0][0].nvars();
  XPolynomial out(nv);
  for (int j = 0; j < k; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<XPolynomial>> minor;
    for (int i = 1; i < k; ++i) {
      std::vector<XPolynomial> row;
      for (int c = 0; c < k; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    XPolynomial t = m[0][j] * det(std::move(minor));
    if (j % 2) out -= t;
    else out += t;
  }
  return out;
}

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool is_monomial(const XPolynomial& p) { return p.size() == 1; }

}  // namespace detail

inline IdentityResult verify_identity(const StructureConstants& base, const IdentitySpec& spec) {
  IdentityResult res{spec.id, false, ""};
  const RootSystem& rs = base.roots();
  if (rs.kind() != spec.system) throw std::invalid_argument("identity " + spec.id + " is for another root system");
  if (spec.id.empty()) throw std::invalid_argument("identity without id");
  const StructureConstants sc = base.twisted(twist_vector(rs, spec.twist));
  Support d;
  for (const auto& nm : spec.support) d.insert(rs.parse(nm));
  if (d.empty()) throw std::invalid_argument("identity " + spec.id + " has an empty support");
  const auto mu = mu_polynomials(sc, d, spec.mode);
  ExprContext ctx{&sc, &mu, d};

  if (spec.kind == IdentityKind::equation) {
    if (spec.equation.find('=') == std::string::npos)
      throw std::invalid_argument("identity " + spec.id + " is not an equation");
    auto chain = parse_chain(ctx, spec.equation);
    for (size_t i = 0; i + 1 < chain.size(); ++i)
      if (!chain[i].equals(chain[i + 1])) {
        res.detail = "sides " + std::to_string(i) + " and " + std::to_string(i + 1) + " differ";
        return res;
      }
    res.pass = true;
    return res;
  }

  // Span condition on tangent coordinates: linear in x with coefficients in lambda.
  if (spec.mode != MuMode::tangent) throw std::invalid_argument("span conditions use tangent coordinates");
  if (spec.span.empty() || spec.target.empty() || spec.condition.empty())
    throw std::invalid_argument("identity " + spec.id + " has an incomplete span condition");
  const VarLayout L{rs.size()};
  std::vector<int> rows;
  for (const auto& nm : spec.span) rows.push_back(rs.parse(nm));
  rows.push_back(rs.parse(spec.target));
  std::vector<int> cols;
  for (int a = 0; a < rs.size(); ++a)
    for (int r : rows)
      if (mu[r].depends_on(L.x(a))) {
        cols.push_back(a);
        break;
      }
  std::vector<std::vector<XPolynomial>> m;
  for (int r : rows) {
    if (mu[r].degree() > 2) throw std::logic_error("tangent coordinate is not linear in x");
    std::vector<XPolynomial> row;
    for (int a : cols) row.push_back(mu[r].coefficient(L.x(a), 1));
    m.push_back(std::move(row));
  }
  auto cond = parse_expression(ctx, spec.condition);
  if (!(cond.den.degree() == 0)) throw std::invalid_argument("span condition must be a polynomial");
  XPolynomial c = cond.num;
  const int k = static_cast<int>(rows.size()) - 1;
  bool span_independent = false, some_exact = false, all_divisible = true, any_nonzero = false;
  detail::for_each_subset(static_cast<int>(cols.size()), k, [&](const std::vector<int>& cs) {
    std::vector<std::vector<XPolynomial>> sub;
    for (int i = 0; i < k; ++i) {
      std::vector<XPolynomial> row;
      for (int j : cs) row.push_back(m[i][j]);
      sub.push_back(std::move(row));
    }
    if (detail::is_monomial(detail::det(std::move(sub)))) span_independent = true;
  });
  detail::for_each_subset(static_cast<int>(cols.size()), k + 1, [&](const std::vector<int>& cs) {
    std::vector<std::vector<XPolynomial>> sub;
    for (int i = 0; i <= k; ++i) {
      std::vector<XPolynomial> row;
      for (int j : cs) row.push_back(m[i][j]);
      sub.push_back(std::move(row));
    }
    XPolynomial dt = detail::det(std::move(sub));
    if (dt.is_zero()) return;
    any_nonzero = true;
    auto q = divide_exact(dt, c);
    if (!q) all_divisible = false;
    else if (detail::is_monomial(*q)) some_exact = true;
  });
  if (!span_independent) res.detail = "span rows are not generically independent";
  else if (!any_nonzero) res.detail = "target always lies in the span";
  else if (!all_divisible) res.detail = "some minor is not a multiple of the condition";
  else if (!some_exact) res.detail = "no minor equals the condition up to a monomial";
  else res.pass = true;
  return res;
}

// Flips of up to `max_flips` roots (from `candidates`) under which the
// identity passes. Used to calibrate declared twists.
inline std::vector<std::vector<std::string>> search_twists(const StructureConstants& sc, IdentitySpec spec,
                                                           const std::vector<int>& candidates, int max_flips,
                                                           size_t limit = 16) {
  std::vector<std::vector<std::string>> found;
  const RootSystem& rs = sc.roots();
  for (int k = 0; k <= max_flips && found.size() < limit; ++k)
    detail::for_each_subset(static_cast<int>(candidates.size()), k, [&](const std::vector<int>& idx) {
      if (found.size() >= limit) return;
      spec.twist.clear();
      for (int i : idx) spec.twist.push_back(rs.name(candidates[i]));
      if (verify_identity(sc, spec).pass) found.push_back(spec.twist);
    });
  return found;
}

// ---------------------------------------------------------------------------
// Triangular elimination of x-variables from the coordinates above gamma.

struct ClosureStep {
  int row;       // coordinate used
  int variable;  // root a of the resolved x_a
};

struct SolvableClosure {
  std::set<int> variables;
  std::vector<ClosureStep> trace;
};

// A coordinate mu_b, b above gamma, resolves x_a when x_a is the only
// unresolved variable in it, it occurs linearly, and its coefficient is a
// nonzero constant times lambda variables only (hence invertible for a form
// with support D).
inline SolvableClosure solvable_closure(const StructureConstants& sc, Support d, int gamma) {
  const int n = sc.size();
  const VarLayout L{n};
  const auto mu = mu_polynomials(sc, d, MuMode::group);
  SolvableClosure out;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int b = n - 1; b > gamma; --b) {
      int unresolved = -1, count = 0;
      for (int v : mu[b].variables())
        if (L.is_x(v) && !out.variables.count(v)) {
          unresolved = v;
          ++count;
        }
      if (count != 1 || mu[b].degree_in(unresolved) != 1) continue;
      XPolynomial coef = mu[b].coefficient(unresolved, 1);
      if (!detail::is_monomial(coef)) continue;
      bool lam_only = true;
      for (int v : coef.variables())
        if (L.is_x(v)) lam_only = false;
      if (!lam_only) continue;
      out.variables.insert(unresolved);
      out.trace.push_back({b, unresolved});
      progress = true;
    }
  }
  return out;
}

// The elimination hypothesis: for each a in D above gamma, T_{gamma,a} only
// involves resolved variables.
inline bool elimination_applies(const StructureConstants& sc, Support d, int gamma) {
  const auto cl = solvable_closure(sc, d, gamma);
  for (int a : d.descending()) {
    if (a <= gamma) continue;
    for (int v : t_polynomial(sc, gamma, a).variables())
      if (!cl.variables.count(v)) return false;
  }
  return true;
}

}  // namespace nilorb
