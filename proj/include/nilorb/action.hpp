#pragma once
// Linear forms on the nilradical, the tangent and coadjoint actions, and
// the rank condition that defines the canonical set S.

#include <vector>

#include "chevalley.hpp"
#include "linalg.hpp"
#include "support.hpp"

namespace nilorb {

template <class S>
struct LinearForm {
  Field field;
  std::vector<S> c;

  static LinearForm zero(const Field& f, int n) { return {f, std::vector<S>(n, scalar<S>(f, 0))}; }
  static LinearForm dual_basis(const Field& f, int n, int i) {
    auto l = zero(f, n);
    l.c.at(i) = scalar<S>(f, 1);
    return l;
  }
  Support support() const {
    Support d;
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
      if (!is_zero(c[i])) d.insert(i);
    return d;
  }
  // lambda(y)
  S operator()(const AlgebraElement<S>& y) const {
    S s = scalar<S>(field, 0);
    for (size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i]) && !is_zero(y.c[i])) s += c[i] * y.c[i];
    return s;
  }
  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.field == b.field && a.c == b.c; }
};

// Random form with the given support; coordinates on the support nonzero.
template <class S, class Rng>
LinearForm<S> random_form(const Field& f, int n, Support d, Rng& rng) {
  auto l = LinearForm<S>::zero(f, n);
  for (int i : d.descending()) l.c[i] = random_scalar<S>(f, rng, true);
  return l;
}

// lambda([e_a, e_b]) = N_{a,b} lambda_{a+b}
template <class S>
S pairing(const StructureConstants& sc, const LinearForm<S>& l, int a, int b) {
  int s = sc.roots().sum(a, b);
  if (s < 0 || is_zero(l.c[s])) return scalar<S>(l.field, 0);
  return scalar<S>(l.field, sc.n(a, b)) * l.c[s];
}

template <class S>
LinearForm<S> tangent_act(const StructureConstants& sc, const AlgebraElement<S>& x, const LinearForm<S>& l) {
  if (!(x.field == l.field)) throw ArithmeticError("tangent action over different fields");
  const int n = sc.size();
  auto out = LinearForm<S>::zero(l.field, n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      if (!is_zero(x.c[a])) out.c[b] -= pairing(sc, l, a, b) * x.c[a];
  return out;
}

// (exp(x).lambda)(y) = sum_k (-1)^k / k! lambda(ad_x^k y)
template <class S>
LinearForm<S> coadjoint_act(const StructureConstants& sc, const AlgebraElement<S>& x, const LinearForm<S>& l) {
  if (!(x.field == l.field)) throw ArithmeticError("coadjoint action over different fields");
  const RootSystem& rs = sc.roots();
  l.field.require_exp(rs.highest_height());
  const int n = sc.size();
  auto out = LinearForm<S>::zero(l.field, n);
  for (int b = 0; b < n; ++b) {
    auto y = AlgebraElement<S>::basis(l.field, n, b);
    S fact = scalar<S>(l.field, 1);
    for (int k = 0; !y.is_zero(); ++k) {
      if (k > 0) {
        fact *= scalar<S>(l.field, k);
        y = bracket(sc, x, y);
      }
      S term = l(y) * inv(fact);
      if (k % 2) out.c[b] -= term;
      else out.c[b] += term;
    }
  }
  return out;
}

// Sparse description of exp(t e_a) acting on forms:
// mu_b = sum over terms (k, target, coef) of coef * t^k * lambda_target,
// with coef = (-1)^k / k! * N_{a,b} N_{a,b+a} ... (k factors).
struct SubgroupTerm {
  int k;
  int target;
  Rational coef;
};

inline std::vector<std::vector<std::vector<SubgroupTerm>>> root_subgroup_terms(const StructureConstants& sc) {
  const RootSystem& rs = sc.roots();
  const int n = rs.size();
  std::vector<std::vector<std::vector<SubgroupTerm>>> out(n, std::vector<std::vector<SubgroupTerm>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out[a][b].push_back({0, b, Rational(1)});
      long long prod = 1, fact = 1;
      int cur = b;
      for (int k = 1;; ++k) {
        int nxt = rs.sum(a, cur);
        if (nxt < 0) break;
        prod *= sc.n(a, cur);
        fact *= k;
        Rational coef(static_cast<long>(prod * (k % 2 ? -1 : 1)), static_cast<long>(fact));
        coef.canonicalize();
        out[a][b].push_back({k, nxt, coef});
        cur = nxt;
      }
    }
  return out;
}

template <class S>
struct RankPair {
  int gamma = 0;
  std::vector<int> a_rows;  // roots >= gamma, descending; the last is gamma
  std::vector<int> b_rows;  // roots > gamma, descending
  Matrix<S> A, B;
};

template <class S>
std::vector<S> rank_row(const StructureConstants& sc, const LinearForm<S>& l, int a) {
  const int n = sc.size();
  std::vector<S> r(n, scalar<S>(l.field, 0));
  for (int b = 0; b < n; ++b) r[b] = pairing(sc, l, a, b);
  return r;
}

template <class S>
RankPair<S> build_rank_pair(const StructureConstants& sc, const LinearForm<S>& l, int gamma) {
  const int n = sc.size();
  if (gamma < 0 || gamma >= n) throw std::out_of_range("gamma out of range");
  RankPair<S> rp;
  rp.gamma = gamma;
  for (int a = n - 1; a > gamma; --a) rp.b_rows.push_back(a);
  rp.a_rows = rp.b_rows;
  rp.a_rows.push_back(gamma);
  const S zero = scalar<S>(l.field, 0);
  rp.A = Matrix<S>(static_cast<int>(rp.a_rows.size()), n, zero);
  rp.B = Matrix<S>(static_cast<int>(rp.b_rows.size()), n, zero);
  for (size_t i = 0; i < rp.a_rows.size(); ++i)
    for (int b = 0; b < n; ++b) {
      rp.A(static_cast<int>(i), b) = pairing(sc, l, rp.a_rows[i], b);
      if (i < rp.b_rows.size()) rp.B(static_cast<int>(i), b) = rp.A(static_cast<int>(i), b);
    }
  return rp;
}

// Row gamma of A lies in the row space of B.
template <class S>
bool satisfies_rk(const StructureConstants& sc, const LinearForm<S>& l, int gamma) {
  const int n = sc.size();
  EchelonBasis<S> e(n);
  for (int a = n - 1; a > gamma; --a) e.insert(rank_row(sc, l, a));
  return e.contains(rank_row(sc, l, gamma));
}

// All gamma in the support at once: one sweep from the top, testing each
// support row against the rows above it before inserting it.
template <class S>
bool in_S(const StructureConstants& sc, const LinearForm<S>& l) {
  const int n = sc.size();
  const Support d = l.support();
  if (d.empty()) return true;
  EchelonBasis<S> e(n);
  for (int a = n - 1; a >= d.min(); --a) {
    auto r = rank_row(sc, l, a);
    if (d.contains(a)) {
      if (!e.reduce(r)) return false;
    } else {
      e.insert(std::move(r));
    }
  }
  return true;
}

// Rank of the full skew matrix (lambda([e_a, e_b]))_{a,b}.
template <class S>
int skew_rank(const StructureConstants& sc, const LinearForm<S>& l) {
  const int n = sc.size();
  EchelonBasis<S> e(n);
  for (int a = 0; a < n; ++a) e.insert(rank_row(sc, l, a));
  return e.rank();
}

}  // namespace nilorb
