#pragma once
// Support-level classification: the zeta closure, the sufficient and
// necessary tests, the pruned support traversal, resolution of the
// ambiguous supports by sampling, the final description of S and the
// orbit-count polynomial.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "action.hpp"
#include "support.hpp"

namespace nilorb {

// Structural nonzero pattern of lambda([e_i, e_j]) for forms with support D:
// row[i] has bit j iff root i + root j lies in D.
struct Pattern {
  int n = 0;
  std::vector<std::uint32_t> row;

  Pattern(const RootSystem& rs, Support d) : n(rs.size()), row(rs.size(), 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d.contains(rs.sum(i, j))) row[i] |= 1u << j;
  }
  bool at(int i, int j) const { return (row[i] >> j) & 1u; }
};

struct ZetaSet {
  Support roots;
  std::vector<std::pair<int, int>> trace;  // (added root, witnessing row)
};

// Add delta whenever some row beta above gamma has delta as its only
// nonzero column outside the set; iterate to the fixpoint.
inline ZetaSet zeta(const RootSystem& rs, Support d, int gamma, bool ascending_scan = false) {
  Pattern pat(rs, d);
  ZetaSet z;
  const int n = rs.size();
  for (bool grew = true; grew;) {
    grew = false;
    for (int t = 0; t < n - 1 - gamma; ++t) {
      int beta = ascending_scan ? gamma + 1 + t : n - 1 - t;
      std::uint32_t free = pat.row[beta] & ~z.roots.bits;
      if (std::popcount(free) == 1) {
        int delta = std::countr_zero(free);
        z.roots.insert(delta);
        z.trace.emplace_back(delta, beta);
        grew = true;
      }
    }
  }
  return z;
}

inline bool sufficient_at(const RootSystem& rs, Support d, int gamma) {
  Pattern pat(rs, d);
  return (pat.row[gamma] & ~zeta(rs, d, gamma).roots.bits) == 0;
}

inline bool sufficient_condition(const RootSystem& rs, Support d) {
  for (int g : d.descending())
    if (!sufficient_at(rs, d, g)) return false;
  return true;
}

enum class NecessaryRule {
  // Linear chain walk exactly as in the published enumeration program.
  reference_chain,
  // The linear walk plus branch resolution: a column whose other entries
  // all sit in rows owning a private free variable is also a dead end.
  branching,
};

constexpr int kUnbounded = -1;

struct NecessaryOptions {
  int max_depth = kUnbounded;  // number of chain extensions beyond gamma
  NecessaryRule rule = NecessaryRule::branching;
};

// Chain search at gamma. Returns the number of extensions used when a
// violation is found, nullopt otherwise.
inline std::optional<int> necessary_violation_at(const RootSystem& rs, Support d, int gamma,
                                                 const NecessaryOptions& opt = {}) {
  if (opt.max_depth != kUnbounded && opt.max_depth < 0) throw std::invalid_argument("depth must be >= 0");
  const int n = rs.size();
  Pattern pat(rs, d);
  const std::uint32_t zmask = zeta(rs, d, gamma).roots.bits;
  const bool bounded = opt.max_depth != kUnbounded;

  auto others = [&](int e, int r) {
    std::vector<int> out;
    for (int i = n - 1; i > gamma; --i)
      if (i != r && pat.at(i, e)) out.push_back(i);
    return out;
  };
  // Row i has a free column j != e that no other row >= gamma touches.
  auto has_private = [&](int i, int e) {
    std::uint32_t free = pat.row[i] & ~zmask & ~(1u << e);
    for (int j = 0; j < n; ++j) {
      if (!((free >> j) & 1u)) continue;
      bool alone = true;
      for (int k = gamma; k < n && alone; ++k)
        if (k != i && pat.at(k, j)) alone = false;
      if (alone) return true;
    }
    return false;
  };

  int r = gamma, col = -1, ext = 0;
  std::uint32_t visited = 1u << gamma;
  for (;;) {
    std::vector<int> elig;
    for (int j = 0; j < n; ++j)
      if (pat.at(r, j) && !((zmask >> j) & 1u) && j != col) elig.push_back(j);
    std::vector<std::vector<int>> oth;
    for (int e : elig) {
      oth.push_back(others(e, r));
      if (oth.back().empty()) return ext;
    }
    if (opt.rule == NecessaryRule::branching && (!bounded || ext + 2 <= opt.max_depth)) {
      for (size_t t = 0; t < elig.size(); ++t) {
        bool all = true;
        for (int i : oth[t]) all = all && has_private(i, elig[t]);
        if (all) return ext + 2;
      }
    }
    if (elig.size() != 1 || oth[0].size() != 1) return std::nullopt;
    if (bounded && ext + 1 > opt.max_depth) return std::nullopt;
    int next = oth[0][0];
    if ((visited >> next) & 1u) return std::nullopt;
    visited |= 1u << next;
    ++ext;
    col = elig[0];
    r = next;
  }
}

inline bool necessary_violation(const RootSystem& rs, Support d, const NecessaryOptions& opt = {}) {
  for (int g : d.descending())
    if (necessary_violation_at(rs, d, g, opt)) return true;
  return false;
}

struct Condition {
  enum class Kind { sufficient, necessary } kind = Kind::sufficient;
  NecessaryOptions necessary;

  static Condition sufficient() { return {}; }
  static Condition necessary_with(int depth, NecessaryRule rule = NecessaryRule::reference_chain) {
    Condition c;
    c.kind = Kind::necessary;
    c.necessary = {depth, rule};
    return c;
  }
  bool passes_at(const RootSystem& rs, Support d, int gamma) const {
    if (kind == Kind::sufficient) return sufficient_at(rs, d, gamma);
    return !necessary_violation_at(rs, d, gamma, necessary);
  }
};

// The pruned traversal: grow downward from the highest root; on failure
// replace the minimal root by its predecessor; after the lowest root,
// backtrack. Only the newly added minimal root is tested, which is sound
// because the test at gamma only sees roots above gamma.
inline std::vector<Support> enumerate_supports(const RootSystem& rs, const Condition& cond) {
  std::vector<int> stack{rs.highest()};
  std::vector<Support> out;
  for (;;) {
    Support d = Support::from_indices(stack);
    int last = stack.back();
    bool pass = cond.passes_at(rs, d, last);
    if (pass) {
      out.push_back(d);
      if (last != 0) stack.push_back(last - 1);
    } else if (last != 0) {
      stack.back() = last - 1;
    }
    if (last == 0) {
      if (stack.size() == 1) break;
      stack.pop_back();
      int top = stack.back();
      stack.back() = top - 1;
    }
  }
  out.push_back(Support{});
  return out;
}

inline std::vector<Support> ambiguous_supports(const RootSystem& rs) {
  auto suff = enumerate_supports(rs, Condition::sufficient());
  std::set<Support> s(suff.begin(), suff.end());
  std::vector<Support> out;
  for (Support d : enumerate_supports(rs, Condition::necessary_with(2)))
    if (!s.count(d)) out.push_back(d);
  return out;
}

// c * prod lhs = prod rhs over coordinates in the reference basis.
struct BinomialConstraint {
  std::vector<std::pair<int, int>> lhs, rhs;  // (root, exponent)
  int solve_for = -1;                         // root with exponent 1 on the lhs

  Support roots() const {
    Support d;
    for (auto [r, e] : lhs) d.insert(r);
    for (auto [r, e] : rhs) d.insert(r);
    return d;
  }
  std::string to_string(const RootSystem& rs) const {
    auto side = [&](const std::vector<std::pair<int, int>>& m) {
      std::string s;
      for (auto [r, e] : m) {
        if (!s.empty()) s += '*';
        s += "lam[" + rs.name(r) + "]";
        if (e != 1) s += "^" + std::to_string(e);
      }
      return s;
    };
    return side(lhs) + "=" + side(rhs);
  }

  template <class S>
  static S mono(const std::vector<std::pair<int, int>>& m, const std::vector<S>& v, const Field& f) {
    S p = scalar<S>(f, 1);
    for (auto [r, e] : m)
      for (int k = 0; k < e; ++k) p *= v[r];
    return p;
  }
  // Coordinates in the reference basis are s_a * lambda_a.
  template <class S>
  std::vector<S> reference_coords(const LinearForm<S>& l, const SignTwist& tw) const {
    std::vector<S> v = l.c;
    for (size_t i = 0; i < v.size(); ++i)
      if (!tw.empty() && tw[i] == -1) v[i] = -v[i];
    return v;
  }
  template <class S>
  bool holds(const LinearForm<S>& l, const SignTwist& tw) const {
    auto v = reference_coords(l, tw);
    return mono(lhs, v, l.field) == mono(rhs, v, l.field);
  }
  // Overwrites the solve_for coordinate so that the equation holds.
  template <class S>
  void enforce(LinearForm<S>& l, const SignTwist& tw) const {
    auto v = reference_coords(l, tw);
    std::vector<std::pair<int, int>> rest;
    for (auto [r, e] : lhs)
      if (r != solve_for) rest.emplace_back(r, e);
    S val = mono(rhs, v, l.field) * inv(mono(rest, v, l.field));
    l.c[solve_for] = (!tw.empty() && tw[solve_for] == -1) ? -val : val;
  }
};

// lambda_{a1+a2} lambda_{a2+2a3+a4}^2 = lambda_{a1+a2+2a3} lambda_{a2+a3+a4}^2
inline std::optional<BinomialConstraint> default_constraint(const RootSystem& rs) {
  if (rs.kind() != SystemKind::F4) return std::nullopt;
  BinomialConstraint c;
  int l0 = rs.parse("a1+a2"), l1 = rs.parse("a2+2a3+a4");
  int l2 = rs.parse("a1+a2+2a3"), l3 = rs.parse("a2+a3+a4");
  c.lhs = {{l0, 1}, {l1, 2}};
  c.rhs = {{l2, 1}, {l3, 2}};
  c.solve_for = l0;
  return c;
}

enum class Verdict { InS, NotInS, Conditional, Unresolved };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InS: return "InS";
    case Verdict::NotInS: return "NotInS";
    case Verdict::Conditional: return "Conditional";
    default: return "Unresolved";
  }
}

struct SupportStatus {
  Verdict verdict = Verdict::InS;
  std::optional<BinomialConstraint> constraint;
  // sample tallies: [constraint holds][in S]
  long long tally[2][2] = {{0, 0}, {0, 0}};
};

struct ClassifyOptions {
  std::vector<std::uint32_t> primes{13, 17};
  int trials = 30;
  std::uint64_t seed = 20240601;
  std::optional<BinomialConstraint> constraint;
  SignTwist twist;  // maps our basis to the reference basis of the constraint
};

// The binomial condition and the declared sign twist for the system.
inline ClassifyOptions default_classify_options(const RootSystem& rs) {
  ClassifyOptions o;
  o.constraint = default_constraint(rs);
  o.twist = declared_twist(rs);
  return o;
}

inline SupportStatus classify_ambiguous(const StructureConstants& sc, Support d, const ClassifyOptions& opt) {
  const RootSystem& rs = sc.roots();
  if (opt.trials < 30) throw std::invalid_argument("classification needs at least 30 trials");
  if (opt.primes.size() < 2) throw std::invalid_argument("classification needs at least two primes");
  for (auto p : opt.primes)
    if (!Field::prime(p).supports_exp(rs.highest_height()))
      throw CharacteristicError("classification prime " + std::to_string(p) + " is below the characteristic bound");
  SupportStatus st;
  const bool applicable = opt.constraint && (opt.constraint->roots().bits & ~d.bits) == 0;
  std::mt19937_64 rng(opt.seed ^ d.bits);
  for (auto p : opt.primes) {
    Field f = Field::prime(p);
    for (int pass = 0; pass < (applicable ? 2 : 1); ++pass)
      for (int t = 0; t < opt.trials; ++t) {
        // pass 0 draws forms off the constraint variety, pass 1 forms on it
        auto l = random_form<Zp>(f, rs.size(), d, rng);
        if (pass == 1) opt.constraint->enforce(l, opt.twist);
        while (pass == 0 && applicable && opt.constraint->holds(l, opt.twist))
          l = random_form<Zp>(f, rs.size(), d, rng);
        bool holds = applicable && opt.constraint->holds(l, opt.twist);
        st.tally[holds][in_S(sc, l)]++;
      }
  }
  long long in = st.tally[0][1] + st.tally[1][1], out = st.tally[0][0] + st.tally[1][0];
  if (out == 0) {
    st.verdict = Verdict::InS;
  } else if (in == 0) {
    st.verdict = Verdict::NotInS;
  } else if (applicable && st.tally[0][1] == 0 && st.tally[1][0] == 0 &&
             st.tally[1][1] >= static_cast<long long>(opt.trials) * static_cast<long long>(opt.primes.size()) &&
             st.tally[0][0] >= static_cast<long long>(opt.trials) * static_cast<long long>(opt.primes.size())) {
    st.verdict = Verdict::Conditional;
    st.constraint = opt.constraint;
  } else {
    st.verdict = Verdict::Unresolved;
  }
  return st;
}

struct UnresolvedSupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::pair<Support, SupportStatus>> final_S(const StructureConstants& sc, const ClassifyOptions& opt) {
  const RootSystem& rs = sc.roots();
  std::vector<std::pair<Support, SupportStatus>> out;
  for (Support d : enumerate_supports(rs, Condition::sufficient())) out.push_back({d, SupportStatus{}});
  for (Support d : ambiguous_supports(rs)) {
    auto st = classify_ambiguous(sc, d, opt);
    if (st.verdict == Verdict::Unresolved)
      throw UnresolvedSupport("support " + format_support(rs, d) + " could not be resolved by sampling");
    if (st.verdict != Verdict::NotInS) out.push_back({d, st});
  }
  return out;
}

// Coefficients of |S| in the basis (q-1)^k.
inline std::vector<long long> count_polynomial(const std::vector<std::pair<Support, SupportStatus>>& fs) {
  std::vector<long long> c;
  for (const auto& [d, st] : fs) {
    int k = d.size() - (st.verdict == Verdict::Conditional ? 1 : 0);
    if (static_cast<int>(c.size()) <= k) c.resize(k + 1, 0);
    c[k]++;
  }
  return c;
}

inline mpz_class evaluate_count(const std::vector<long long>& coeffs, long q) {
  mpz_class v = 0, pw = 1;
  for (long long c : coeffs) {
    v += pw * static_cast<long>(c);
    pw *= (q - 1);
  }
  return v;
}

inline std::vector<Support> read_support_fixture(const RootSystem& rs, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  std::vector<Support> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_support_digits(rs, line));
  }
  return out;
}

}  // namespace nilorb
