#pragma once
// Brute-force ground truth: the full coadjoint orbit partition for G2 over
// a small prime field, checks against it, and a randomized distinctness
// probe for F4.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "canon.hpp"

namespace nilorb {

// Forms over F_q packed as base-q integers, digit i = coordinate of root i.
class FormCodec {
 public:
  FormCodec(std::uint32_t q, int n) : q_(q), n_(n), pw_(n + 1, 1) {
    for (int i = 1; i <= n; ++i) pw_[i] = pw_[i - 1] * q;
  }
  std::uint64_t count() const { return pw_[n_]; }
  std::uint32_t q() const { return q_; }
  int n() const { return n_; }
  std::uint64_t pack(const std::vector<std::uint32_t>& d) const {
    std::uint64_t v = 0;
    for (int i = n_ - 1; i >= 0; --i) v = v * q_ + d[i];
    return v;
  }
  void unpack(std::uint64_t v, std::vector<std::uint32_t>& d) const {
    d.resize(n_);
    for (int i = 0; i < n_; ++i) {
      d[i] = static_cast<std::uint32_t>(v % q_);
      v /= q_;
    }
  }
  LinearForm<Zp> form(std::uint64_t v) const {
    std::vector<std::uint32_t> d;
    unpack(v, d);
    auto l = LinearForm<Zp>::zero(Field::prime(q_), n_);
    for (int i = 0; i < n_; ++i) l.c[i] = Zp::raw(d[i], q_);
    return l;
  }
  std::uint64_t pack(const LinearForm<Zp>& l) const {
    std::vector<std::uint32_t> d(n_);
    for (int i = 0; i < n_; ++i) d[i] = l.c[i].value();
    return pack(d);
  }

 private:
  std::uint32_t q_;
  int n_;
  std::vector<std::uint64_t> pw_;
};

// exp(t e_a) as a dense matrix over F_q: mu_b = sum_c M[b][c] lambda_c.
struct GeneratorMatrix {
  int root;
  std::uint32_t t;
  std::vector<std::uint32_t> m;  // n*n, row-major
};

inline std::vector<GeneratorMatrix> root_subgroup_generators(const StructureConstants& sc, std::uint32_t q,
                                                             bool all_parameters = true) {
  const int n = sc.size();
  Field::prime(q).require_exp(sc.roots().highest_height());
  const auto terms = root_subgroup_terms(sc);
  std::vector<GeneratorMatrix> out;
  for (int a = 0; a < n; ++a)
    for (std::uint32_t t = 1; t < (all_parameters ? q : 2); ++t) {
      GeneratorMatrix g{a, t, std::vector<std::uint32_t>(n * n, 0)};
      for (int b = 0; b < n; ++b)
        for (const auto& term : terms[a][b]) {
          Zp c = reduce(term.coef, q);
          for (int k = 0; k < term.k; ++k) c *= Zp(t, q);
          auto& cell = g.m[b * n + term.target];
          cell = (cell + c.value()) % q;
        }
      out.push_back(std::move(g));
    }
  return out;
}

inline void apply_generator(const GeneratorMatrix& g, std::uint32_t q, const std::vector<std::uint32_t>& in,
                            std::vector<std::uint32_t>& out) {
  const int n = static_cast<int>(in.size());
  out.assign(n, 0);
  for (int b = 0; b < n; ++b) {
    std::uint64_t s = 0;
    for (int c = 0; c < n; ++c) s += std::uint64_t(g.m[b * n + c]) * in[c];
    out[b] = static_cast<std::uint32_t>(s % q);
  }
}

struct OrbitPartition {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<std::uint32_t> orbit_id;         // packed form -> minimum packed member
  std::map<std::uint32_t, std::uint64_t> sizes;  // orbit id -> cardinality
  std::size_t orbits() const { return sizes.size(); }
};

// Breadth-first closure under the root subgroups. Seeds are visited in
// increasing packed order, so each seed is the minimum of its orbit.
inline OrbitPartition orbit_partition(const StructureConstants& sc, std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("oracle modulus must be prime");
  const int n = sc.size();
  FormCodec codec(q, n);
  if (codec.count() > (std::uint64_t(1) << 31)) throw std::invalid_argument("state space too large for the oracle");
  const auto gens = root_subgroup_generators(sc, q);
  OrbitPartition part;
  part.q = q;
  part.n = n;
  constexpr std::uint32_t unset = ~0u;
  part.orbit_id.assign(codec.count(), unset);
  std::vector<std::uint32_t> frontier, next, d, e;
  for (std::uint64_t seed = 0; seed < codec.count(); ++seed) {
    if (part.orbit_id[seed] != unset) continue;
    const auto id = static_cast<std::uint32_t>(seed);
    part.orbit_id[seed] = id;
    std::uint64_t size = 1;
    frontier.assign(1, id);
    while (!frontier.empty()) {
      next.clear();
      for (std::uint32_t v : frontier) {
        codec.unpack(v, d);
        for (const auto& g : gens) {
          apply_generator(g, q, d, e);
          auto w = codec.pack(e);
          if (part.orbit_id[w] == unset) {
            part.orbit_id[w] = id;
            next.push_back(static_cast<std::uint32_t>(w));
            ++size;
          }
        }
      }
      frontier.swap(next);
    }
    part.sizes[id] = size;
  }
  return part;
}

inline OrbitPartition orbit_partition_g2(const StructureConstants& sc, std::uint32_t q) {
  if (sc.roots().kind() != SystemKind::G2) throw std::invalid_argument("orbit_partition_g2 needs G2 constants");
  return orbit_partition(sc, q);
}

struct CanonicalReport {
  std::uint32_t q = 0;
  std::size_t orbits = 0;
  std::size_t canonicals = 0;
  std::vector<std::uint32_t> violations;              // orbit ids with != 1 member in S
  std::map<std::uint32_t, std::uint32_t> canonical;   // orbit id -> packed canonical form
  std::map<Support, std::uint64_t> support_histogram;  // supports of canonical forms
  std::vector<std::string> histogram_mismatches;       // against (q-1)^|D| per listed support
};

inline CanonicalReport verify_unique_canonicals(const StructureConstants& sc, const OrbitPartition& part,
                                                const std::vector<Support>& listed) {
  CanonicalReport rep;
  rep.q = part.q;
  rep.orbits = part.orbits();
  FormCodec codec(part.q, part.n);
  std::map<std::uint32_t, std::uint32_t> members_in_s;
  for (std::uint64_t v = 0; v < codec.count(); ++v) {
    auto l = codec.form(v);
    if (!in_S(sc, l)) continue;
    auto id = part.orbit_id[v];
    if (members_in_s[id]++ == 0) rep.canonical[id] = static_cast<std::uint32_t>(v);
    ++rep.canonicals;
    rep.support_histogram[l.support()]++;
  }
  for (const auto& [id, size] : part.sizes) {
    auto it = members_in_s.find(id);
    if (it == members_in_s.end() || it->second != 1) rep.violations.push_back(id);
  }
  std::map<Support, std::uint64_t> expected;
  for (Support d : listed) {
    std::uint64_t c = 1;
    for (int i = 0; i < d.size(); ++i) c *= part.q - 1;
    expected[d] = c;
  }
  for (const auto& [d, c] : rep.support_histogram)
    if (!expected.count(d) || expected[d] != c)
      rep.histogram_mismatches.push_back(format_support(sc.roots(), d) + ": " + std::to_string(c));
  for (const auto& [d, c] : expected)
    if (!rep.support_histogram.count(d))
      rep.histogram_mismatches.push_back(format_support(sc.roots(), d) + ": missing");
  return rep;
}

struct RankReport {
  std::size_t checked = 0;
  std::vector<std::uint32_t> mismatches;  // orbit ids with |orbit| != q^rank
};

inline RankReport orbit_size_rank_check(const StructureConstants& sc, const OrbitPartition& part) {
  RankReport rep;
  FormCodec codec(part.q, part.n);
  for (const auto& [id, size] : part.sizes) {
    int r = skew_rank(sc, codec.form(id));
    std::uint64_t expect = 1;
    for (int i = 0; i < r; ++i) expect *= part.q;
    ++rep.checked;
    if (expect != size) rep.mismatches.push_back(id);
  }
  return rep;
}

// Applies random root-subgroup elements to random forms and confirms the
// orbit id never changes.
inline std::size_t partition_spot_check(const StructureConstants& sc, const OrbitPartition& part, int samples,
                                        std::uint64_t seed) {
  FormCodec codec(part.q, part.n);
  const auto gens = root_subgroup_generators(sc, part.q);
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  std::vector<std::uint32_t> d, e;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t v = rng() % codec.count();
    const auto& g = gens[rng() % gens.size()];
    codec.unpack(v, d);
    apply_generator(g, part.q, d, e);
    if (part.orbit_id[codec.pack(e)] != part.orbit_id[v]) ++bad;
  }
  return bad;
}

// The two systems for D = {a+b, 3a+b} and its extension by b. The cubic
// is 6 c3^2 L_{3a+b}^2 L_b - 6 c1 c3 L_{2a+b} L_{3a+b} L_{a+b} + k c1 c2 L_{2a+b}^3
// with k as printed (5) or as derived from exp(chi).lambda (2).
constexpr int kPrintedCubicCoefficient = 5;
constexpr int kDerivedCubicCoefficient = 2;

struct G2EquationReport {
  int cubic_coefficient = 0;
  std::uint32_t xi_ab = 0, xi_3ab = 0;
  std::uint64_t orbit_size = 0;
  std::uint64_t system1_solutions = 0;
  std::uint64_t system1_mismatches = 0;  // forms where "solves system 1" != "in the orbit"
  std::uint64_t system2_mismatches = 0;  // summed over all xi'(b)
  std::size_t extension_orbits = 0;      // distinct orbits among the q-1 extensions
  bool union_holds = false;
  bool pass() const {
    return system1_mismatches == 0 && system2_mismatches == 0 && union_holds && extension_orbits + 1 >= 2;
  }
};

inline G2EquationReport g2_equation_check(const StructureConstants& sc, const OrbitPartition& part,
                                          std::uint32_t xi_ab, std::uint32_t xi_3ab,
                                          int cubic_coefficient = kDerivedCubicCoefficient) {
  const RootSystem& rs = sc.roots();
  if (rs.kind() != SystemKind::G2) throw std::invalid_argument("g2_equation_check needs G2");
  const std::uint32_t q = part.q;
  if (xi_ab % q == 0 || xi_3ab % q == 0) throw std::invalid_argument("xi must be nonzero");
  const int a = rs.parse("a"), b = rs.parse("b"), ab = rs.parse("a+b"), a2b = rs.parse("2a+b"),
            a3b = rs.parse("3a+b"), top = rs.parse("3a+2b");
  const Zp c1(sc.n(a, b), q), c2(sc.n(a, ab), q), c3(sc.n(a, a2b), q);
  FormCodec codec(q, part.n);
  auto packed = [&](std::map<int, std::uint32_t> coords) {
    std::vector<std::uint32_t> d(part.n, 0);
    for (auto [r, v] : coords) d[r] = v % q;
    return codec.pack(d);
  };
  G2EquationReport rep;
  rep.xi_ab = xi_ab;
  rep.xi_3ab = xi_3ab;
  rep.cubic_coefficient = cubic_coefficient;
  const Zp x1(xi_ab, q), x2(xi_3ab, q);
  const auto omega = part.orbit_id[packed({{ab, xi_ab}, {a3b, xi_3ab}})];
  rep.orbit_size = part.sizes.at(omega);

  // Left-hand sides of the first two equations.
  auto cubic = [&](const std::vector<std::uint32_t>& l) {
    Zp lb(l[b], q), lab(l[ab], q), la2b(l[a2b], q), la3b(l[a3b], q);
    return Zp(6, q) * c3 * c3 * la3b * la3b * lb - Zp(6, q) * c1 * c3 * la2b * la3b * lab +
           Zp(cubic_coefficient, q) * c1 * c2 * la2b * la2b * la2b;
  };
  auto quad = [&](const std::vector<std::uint32_t>& l) {
    Zp lab(l[ab], q), la2b(l[a2b], q), la3b(l[a3b], q);
    return Zp(2, q) * c3 * lab * la3b - c2 * la2b * la2b;
  };
  std::map<std::uint32_t, std::uint32_t> ext_orbit;  // xi'(b) -> orbit id
  for (std::uint32_t t = 1; t < q; ++t) ext_orbit[t] = part.orbit_id[packed({{b, t}, {ab, xi_ab}, {a3b, xi_3ab}})];
  std::map<std::uint32_t, std::uint32_t> orbit_to_t;
  for (auto [t, id] : ext_orbit) orbit_to_t[id] = t;
  rep.extension_orbits = orbit_to_t.size();

  std::vector<std::uint32_t> d;
  const Zp rhs2 = Zp(2, q) * c3 * x1 * x2;
  for (std::uint64_t v = 0; v < codec.count(); ++v) {
    codec.unpack(v, d);
    bool base = d[top] == 0 && d[a3b] == xi_3ab % q && quad(d) == rhs2;
    Zp cu = cubic(d);
    bool s1 = base && cu.is_zero();
    rep.system1_solutions += s1;
    if (s1 != (part.orbit_id[v] == omega)) ++rep.system1_mismatches;
    // system 2: the cubic equals 6 c3^2 xi'(3a+b)^2 xi'(b) for xi'(b) = t
    for (auto [t, id] : ext_orbit) {
      bool s2 = base && cu == Zp(6, q) * c3 * c3 * x2 * x2 * Zp(t, q);
      if (s2 != (part.orbit_id[v] == id)) ++rep.system2_mismatches;
    }
  }

  // The sum of the two single-root orbits against the union of orbits.
  std::vector<std::uint32_t> o1, o2;
  const auto id1 = part.orbit_id[packed({{ab, xi_ab}})], id2 = part.orbit_id[packed({{a3b, xi_3ab}})];
  for (std::uint64_t v = 0; v < codec.count(); ++v) {
    if (part.orbit_id[v] == id1) o1.push_back(static_cast<std::uint32_t>(v));
    if (part.orbit_id[v] == id2) o2.push_back(static_cast<std::uint32_t>(v));
  }
  std::vector<char> in_sum(codec.count(), 0);
  std::vector<std::uint32_t> e, f;
  for (auto u : o1) {
    codec.unpack(u, d);
    for (auto w : o2) {
      codec.unpack(w, e);
      f.resize(part.n);
      for (int i = 0; i < part.n; ++i) f[i] = (d[i] + e[i]) % q;
      in_sum[codec.pack(f)] = 1;
    }
  }
  bool ok = true;
  for (std::uint64_t v = 0; v < codec.count() && ok; ++v) {
    auto id = part.orbit_id[v];
    bool in_union = id == omega || orbit_to_t.count(id);
    if (static_cast<bool>(in_sum[v]) != in_union) ok = false;
  }
  rep.union_holds = ok;
  return rep;
}

// ---------------------------------------------------------------------------
// F4 distinctness probe.

struct DistinctnessReport {
  std::uint32_t q = 0;
  int forms = 0;
  int actions = 0;
  std::uint64_t checks = 0;
  std::uint64_t landed_in_s = 0;  // images that are S-members (must equal the start)
  std::uint64_t violations = 0;
};

struct DistinctnessOptions {
  std::uint32_t q = 13;
  int forms = 20;
  int actions = 100000;
  std::uint64_t seed = 7;
  unsigned threads = 1;
};

// A group element is a product of root-subgroup elements exp(t e_a).
// Most elements run over all roots in a random order with random
// parameters; every fourth uses a short sparse word instead.
using GroupWord = std::vector<std::pair<int, std::uint32_t>>;

inline std::vector<GroupWord> random_group_words(int n, std::uint32_t q, int count, std::mt19937_64& rng) {
  std::vector<GroupWord> out(count);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int k = 0; k < count; ++k) {
    if (k % 4 == 3) {
      int len = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < len; ++j)
        out[k].push_back({static_cast<int>(rng() % n), 1 + static_cast<std::uint32_t>(rng() % (q - 1))});
    } else {
      std::shuffle(order.begin(), order.end(), rng);
      for (int a : order) out[k].push_back({a, static_cast<std::uint32_t>(rng() % q)});
    }
  }
  return out;
}

inline DistinctnessReport distinctness_probe(const StructureConstants& sc, const std::vector<LinearForm<Zp>>& forms,
                                             const DistinctnessOptions& opt) {
  const int n = sc.size();
  const std::uint32_t q = opt.q;
  const auto gens = root_subgroup_generators(sc, q);
  auto gen = [&](int a, std::uint32_t t) -> const GeneratorMatrix& { return gens[a * (q - 1) + (t - 1)]; };
  std::mt19937_64 rng(opt.seed);
  const auto words = random_group_words(n, q, opt.actions, rng);

  DistinctnessReport rep;
  rep.q = q;
  rep.forms = static_cast<int>(forms.size());
  rep.actions = opt.actions;
  const unsigned threads = std::max(1u, opt.threads);
  std::vector<DistinctnessReport> partial(threads);
  auto work = [&](unsigned tid) {
    std::vector<std::uint32_t> d, e;
    for (std::size_t i = tid; i < forms.size(); i += threads) {
      std::vector<std::uint32_t> start(n);
      for (int c = 0; c < n; ++c) start[c] = forms[i].c[c].value();
      for (const auto& w : words) {
        d = start;
        for (auto [a, t] : w) {
          if (t == 0) continue;
          apply_generator(gen(a, t), q, d, e);
          d.swap(e);
        }
        auto l = LinearForm<Zp>::zero(Field::prime(q), n);
        for (int c = 0; c < n; ++c) l.c[c] = Zp::raw(d[c], q);
        ++partial[tid].checks;
        if (in_S(sc, l)) {
          ++partial[tid].landed_in_s;
          if (d != start) ++partial[tid].violations;
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : partial) {
    rep.checks += p.checks;
    rep.landed_in_s += p.landed_in_s;
    rep.violations += p.violations;
  }
  return rep;
}

// Random S-members over F_q drawn from the listed supports (conditional
// supports get the binomial condition enforced).
inline std::vector<LinearForm<Zp>> random_canonical_forms(const StructureConstants& sc,
                                                          const std::vector<std::pair<Support, SupportStatus>>& fs,
                                                          const SignTwist& twist, std::uint32_t q, int count,
                                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Field f = Field::prime(q);
  std::vector<LinearForm<Zp>> out;
  while (static_cast<int>(out.size()) < count) {
    const auto& [d, st] = fs[rng() % fs.size()];
    auto l = random_form<Zp>(f, sc.size(), d, rng);
    if (st.verdict == Verdict::Conditional) {
      st.constraint->enforce(l, twist);
      if (l.support() != d) continue;
    }
    if (!in_S(sc, l)) throw std::logic_error("sampled form with a listed support is not in S");
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace nilorb
