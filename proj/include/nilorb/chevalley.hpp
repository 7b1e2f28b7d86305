#pragma once
// Chevalley structure constants on the positive nilradical, the bracket
// and iterated adjoint powers.

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "rootsys.hpp"

namespace nilorb {

// Per-root sign change e_a -> s_a e_a.
using SignTwist = std::vector<int>;

class StructureConstants {
 public:
  // Extraspecial pairs are (a0, xi - a0) with a0 the lowest-index summand,
  // all with sign +1; every other constant follows from the Chevalley
  // relations, processed by increasing height of the sum.
  static StructureConstants compute(const RootSystem& rs);

  const RootSystem& roots() const { return *rs_; }
  int size() const { return rs_->size(); }
  int n(int a, int b) const { return table_[a * size() + b]; }
  const std::string& convention() const { return convention_; }

  StructureConstants twisted(const SignTwist& s) const {
    if (static_cast<int>(s.size()) != size()) throw std::invalid_argument("twist length mismatch");
    for (int v : s)
      if (v != 1 && v != -1) throw std::invalid_argument("twist entries must be +1 or -1");
    StructureConstants out = *this;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        int c = rs_->sum(a, b);
        if (c >= 0) out.table_[a * size() + b] = s[a] * s[b] * s[c] * n(a, b);
      }
    bool identity = true;
    for (int v : s) identity = identity && v == 1;
    if (!identity) out.convention_ += "+twist";
    return out;
  }

  // Replace the table wholesale (used to load externally supplied signs).
  static StructureConstants from_table(const RootSystem& rs, std::vector<int> table, std::string convention) {
    StructureConstants sc;
    sc.rs_ = &rs;
    if (static_cast<int>(table.size()) != rs.size() * rs.size()) throw std::invalid_argument("table size mismatch");
    sc.table_ = std::move(table);
    sc.convention_ = std::move(convention);
    return sc;
  }

 private:
  const RootSystem* rs_ = nullptr;
  std::vector<int> table_;
  std::string convention_;
};

// Roots whose basis vectors are negated to match the sign normalization of
// the published coordinate formulas. Empty for G2.
inline std::vector<std::string> declared_twist_roots(SystemKind k) {
  if (k != SystemKind::F4) return {};
  return {"a3",
          "a3+a4",
          "a2",
          "a2+2a3+2a4",
          "a1+a2",
          "a1+a2+2a3+a4",
          "a1+a2+2a3+2a4",
          "a1+2a2+2a3",
          "a1+2a2+2a3+2a4",
          "a1+2a2+3a3+a4",
          "a1+2a2+3a3+2a4",
          "a1+3a2+4a3+2a4",
          "2a1+3a2+4a3+2a4"};
}

inline SignTwist declared_twist(const RootSystem& rs) {
  SignTwist s(rs.size(), 1);
  for (const auto& r : declared_twist_roots(rs.kind())) s[rs.parse(r)] = -1;
  return s;
}

namespace detail {

// Signed roots: 0..n-1 positive, n..2n-1 their negatives.
class CarterSolver {
 public:
  CarterSolver(const RootSystem& rs) : rs_(rs), n_(rs.size()), pos_(n_ * n_, 0) {}

  Coeffs coeffs(int s) const {
    Coeffs c = rs_.root(s % n_).coeffs;
    if (s >= n_)
      for (auto& v : c) v = -v;
    return c;
  }
  int neg(int s) const { return s < n_ ? s + n_ : s - n_; }
  int norm(int s) const { return rs_.norm(s % n_); }
  int lookup(const Coeffs& c) const {
    if (auto i = rs_.find(c)) return *i;
    Coeffs m{};
    for (int k = 0; k < kMaxRank; ++k) m[k] = -c[k];
    if (auto i = rs_.find(m)) return *i + n_;
    return -1;
  }
  int add(int a, int b) const {
    Coeffs c{};
    Coeffs ca = coeffs(a), cb = coeffs(b);
    for (int k = 0; k < kMaxRank; ++k) c[k] = ca[k] + cb[k];
    return lookup(c);
  }

  // N for arbitrary signed roots whose sum is a root; 0 otherwise.
  int N(int a, int b) const {
    int s = add(a, b);
    if (s < 0) return 0;
    if (a < n_ && b < n_) {
      int v = pos_[a * n_ + b];
      if (v == 0) throw std::logic_error("structure constant requested before it was fixed");
      return v;
    }
    if (a >= n_ && b >= n_) return -N(neg(a), neg(b));
    // a + b + z = 0 with mixed signs; rotate onto a same-sign pair.
    int z = neg(s);
    if ((z < n_) == (a < n_)) return ratio(norm(z), norm(b), N(z, a));
    return ratio(norm(z), norm(a), N(b, z));
  }

  void set(int a, int b, int v) {
    pos_[a * n_ + b] = v;
    pos_[b * n_ + a] = -v;
  }

  const std::vector<int>& table() const { return pos_; }

  static int ratio(int num, int den, int v) {
    long long t = static_cast<long long>(num) * v;
    if (t % den != 0) throw std::logic_error("non-integral structure constant");
    return static_cast<int>(t / den);
  }

 private:
  const RootSystem& rs_;
  int n_;
  std::vector<int> pos_;
};

}  // namespace detail

inline StructureConstants StructureConstants::compute(const RootSystem& rs) {
  const int n = rs.size();
  detail::CarterSolver cs(rs);
  std::vector<int> by_height(n);
  for (int i = 0; i < n; ++i) by_height[i] = i;
  std::stable_sort(by_height.begin(), by_height.end(),
                   [&](int a, int b) { return rs.root(a).height < rs.root(b).height; });

  for (int xi : by_height) {
    std::vector<int> firsts;
    for (int a = 0; a < n; ++a) {
      int b = rs.diff(a, xi);
      if (b >= 0 && a < b) firsts.push_back(a);
    }
    if (firsts.empty()) continue;
    const int a0 = firsts.front();
    const int b0 = rs.diff(a0, xi);
    const int n0 = rs.string_bound(a0, b0) + 1;
    cs.set(a0, b0, n0);
    for (size_t t = 1; t < firsts.size(); ++t) {
      const int a = firsts[t], b = rs.diff(a, xi);
      const int ma0 = cs.neg(a0), mb0 = cs.neg(b0);
      // Four-term relation with (a, b, -a0, -b0); terms vanish when the
      // partial sum is not a root.
      long long acc = 0;  // scaled by lcm of the norms below
      const int L = 12;   // common multiple of every doubled norm in F4 and G2
      int s1 = cs.add(b, ma0);
      if (s1 >= 0) acc += static_cast<long long>(cs.N(b, ma0)) * cs.N(a, mb0) * (L / cs.norm(s1));
      int s2 = cs.add(ma0, a);
      if (s2 >= 0) acc += static_cast<long long>(cs.N(ma0, a)) * cs.N(b, mb0) * (L / cs.norm(s2));
      // N(a,b) * N(-a0,-b0) / |xi|^2 + acc / L = 0, N(-a0,-b0) = -n0
      long long num = acc * rs.norm(xi);
      long long den = static_cast<long long>(L) * n0;
      if (num % den != 0) throw std::logic_error("non-integral structure constant");
      cs.set(a, b, static_cast<int>(num / den));
    }
  }
  return from_table(rs, cs.table(), "extraspecial-lex");
}

// Failure counts of the structural checks on a table of constants.
struct StructureChecks {
  long long antisymmetry = 0, jacobi = 0, magnitude = 0;
  long long triples = 0;
  bool ok() const { return antisymmetry == 0 && jacobi == 0 && magnitude == 0; }
};

// Antisymmetry and |N| = p+1 on every pair with a root sum; the Jacobi
// identity [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 on every triple.
inline StructureChecks verify_structure(const StructureConstants& sc) {
  const RootSystem& rs = sc.roots();
  const int n = rs.size();
  StructureChecks r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || rs.sum(a, b) < 0) continue;
      if (sc.n(a, b) != -sc.n(b, a)) ++r.antisymmetry;
      if (std::abs(sc.n(a, b)) != rs.string_bound(a, b) + 1) ++r.magnitude;
    }
  auto term = [&](int x, int y, int z) -> long long {
    int yz = rs.sum(y, z);
    if (yz < 0 || rs.sum(x, yz) < 0) return 0;
    return static_cast<long long>(sc.n(y, z)) * sc.n(x, yz);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++r.triples;
        if (term(a, b, c) + term(b, c, a) + term(c, a, b) != 0) ++r.jacobi;
      }
  return r;
}

template <class S>
struct AlgebraElement {
  Field field;
  std::vector<S> c;

  static AlgebraElement zero(const Field& f, int n) { return {f, std::vector<S>(n, scalar<S>(f, 0))}; }
  static AlgebraElement basis(const Field& f, int n, int i, S coeff) {
    auto e = zero(f, n);
    e.c.at(i) = coeff;
    return e;
  }
  static AlgebraElement basis(const Field& f, int n, int i) { return basis(f, n, i, scalar<S>(f, 1)); }
  bool is_zero() const {
    for (const auto& v : c)
      if (!nilorb::is_zero(v)) return false;
    return true;
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.field == b.field && a.c == b.c;
  }
};

template <class S>
AlgebraElement<S> bracket(const StructureConstants& sc, const AlgebraElement<S>& x, const AlgebraElement<S>& y) {
  if (!(x.field == y.field)) throw ArithmeticError("bracket of elements over different fields");
  const int n = sc.size();
  const RootSystem& rs = sc.roots();
  auto z = AlgebraElement<S>::zero(x.field, n);
  for (int a = 0; a < n; ++a) {
    if (is_zero(x.c[a])) continue;
    for (int b = 0; b < n; ++b) {
      int s = rs.sum(a, b);
      if (s < 0 || is_zero(y.c[b])) continue;
      z.c[s] += scalar<S>(x.field, sc.n(a, b)) * x.c[a] * y.c[b];
    }
  }
  return z;
}

template <class S>
AlgebraElement<S> ad_power(const StructureConstants& sc, const AlgebraElement<S>& x, AlgebraElement<S> y, int k) {
  if (k < 0) throw std::invalid_argument("ad_power needs k >= 0");
  for (int i = 0; i < k && !y.is_zero(); ++i) y = bracket(sc, x, y);
  return y;
}

}  // namespace nilorb
