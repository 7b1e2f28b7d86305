#pragma once
// The built-in suite of printed coordinate identities for F4 forms.

#include <algorithm>
#include <vector>

#include "symbolic.hpp"

namespace nilorb {

namespace detail {

inline IdentitySpec eq(std::string id, std::vector<std::string> d, MuMode mode, std::string equation,
                       std::string description) {
  IdentitySpec s;
  s.id = std::move(id);
  s.support = std::move(d);
  s.mode = mode;
  s.equation = std::move(equation);
  s.description = std::move(description);
  return s;
}

inline IdentitySpec span(std::string id, std::vector<std::string> d, std::string target,
                         std::vector<std::string> sp, std::string condition, std::string description) {
  IdentitySpec s;
  s.id = std::move(id);
  s.support = std::move(d);
  s.mode = MuMode::tangent;
  s.kind = IdentityKind::span_condition;
  s.target = std::move(target);
  s.span = std::move(sp);
  s.condition = std::move(condition);
  s.description = std::move(description);
  return s;
}

// Flips v by the roots in `extra` (symmetric difference).
inline std::vector<std::string> toggle(std::vector<std::string> v, const std::vector<std::string>& extra) {
  for (const auto& r : extra) {
    auto it = std::find(v.begin(), v.end(), r);
    if (it != v.end()) v.erase(it);
    else v.push_back(r);
  }
  return v;
}

}  // namespace detail

inline std::vector<IdentitySpec> builtin_identities() {
  using detail::eq;
  using detail::span;
  const auto T = MuMode::tangent;
  const auto G = MuMode::group;
  std::vector<IdentitySpec> v;

  // Tangent coordinates for the four-root support {a4, a3+a4, a2, a2+2a3}.
  const std::vector<std::string> d4 = {"a4", "a3+a4", "a2", "a2+2a3"};
  v.push_back(eq("d4-tangent-mu-a2+a3", d4, T, "mu[a2+a3] = 2*x[a3]*lam[a2+2a3]",
                 "tangent coordinate at a2+a3 for {a4, a3+a4, a2, a2+2a3}"));

  // Tangent coordinates for the two-by-two support with conditional rank.
  const std::vector<std::string> s33 = {"a1+a2", "a2+2a3", "a2+a3+a4", "a3+a4", "a4"};
  v.push_back(eq("s33-tangent-vanish", s33, T, "mu[a1+a2] = mu[a2+2a3] = mu[a2+a3+a4] = 0",
                 "top coordinates vanish"));
  v.push_back(eq("s33-tangent-mu-a1", s33, T, "mu[a1] = -x[a2]*lam[a1+a2]", "coordinate at a1"));
  v.push_back(eq("s33-tangent-mu-a2+a3", s33, T, "mu[a2+a3] = -x[a4]*lam[a2+a3+a4] + 2*x[a3]*lam[a2+2a3]",
                 "coordinate at a2+a3"));
  v.push_back(eq("s33-tangent-mu-a3+a4", s33, T,
                 "mu[a3+a4] = x[a2]*lam[a2+a3+a4] = -lam[a2+a3+a4]/lam[a1+a2]*mu[a1]",
                 "coordinate at a3+a4 through mu[a1]"));
  v.push_back(eq("s33-tangent-mu-a3", s33, T, "mu[a3] = -x[a4]*lam[a3+a4] - 2*x[a2+a3]*lam[a2+2a3]",
                 "coordinate at a3"));
  v.push_back(eq("s33-tangent-mu-a4", s33, T,
                 "mu[a4] = x[a3]*lam[a3+a4] + x[a2+a3]*lam[a2+a3+a4]"
                 " = lam[a3+a4]/(2*lam[a2+2a3])*mu[a2+a3] - lam[a2+a3+a4]/(2*lam[a2+2a3])*mu[a3]",
                 "coordinate at a4 as a combination of higher ones"));

  // Support {a1+a2+2a3, a1+a2+a3+a4, a2+2a3+a4, a2+a3}: x[a3] is recovered.
  const std::vector<std::string> s25 = {"a1+a2+2a3", "a1+a2+a3+a4", "a2+2a3+a4", "a2+a3"};
  v.push_back(eq("s25-tangent-mu-a2", s25, T, "mu[a2] = -x[a3]*lam[a2+a3]", "coordinate at a2"));
  v.push_back(eq("s25-tangent-mu-a1+a2+a3", s25, T,
                 "mu[a1+a2+a3] = -x[a4]*lam[a1+a2+a3+a4] + 2*x[a3]*lam[a1+a2+2a3]", "coordinate at a1+a2+a3"));
  v.push_back(eq("s25-tangent-mu-a2+2a3", s25, T,
                 "mu[a2+2a3] = -x[a4]*lam[a2+2a3+a4] + x[a1]*lam[a1+a2+2a3]", "coordinate at a2+2a3"));
  v.push_back(eq("s25-tangent-mu-a2+a3+a4", s25, T,
                 "mu[a2+a3+a4] = x[a3]*lam[a2+2a3+a4] + x[a1]*lam[a1+a2+a3+a4]", "coordinate at a2+a3+a4"));
  v.push_back(eq("s25-tangent-x-a3", s25, T,
                 "x[a3] = (mu[a2+a3+a4]*lam[a1+a2+2a3] - mu[a2+2a3]*lam[a1+a2+a3+a4]"
                 " + mu[a1+a2+a3]*lam[a2+2a3+a4]) / (3*lam[a2+2a3+a4]*lam[a1+a2+2a3])",
                 "x[a3] recovered from coordinates above a2"));

  // Conditional supports: the common core.
  const std::vector<std::string> core = {"a1+a2+2a3", "a2+2a3+a4", "a2+a3+a4", "a1+a2"};
  const std::string cond = "lam[a1+a2]*lam[a2+2a3+a4]^2 - lam[a1+a2+2a3]*lam[a2+a3+a4]^2";
  v.push_back(eq("core-tangent-mu-a2+2a3", core, T, "mu[a2+2a3] = -x[a4]*lam[a2+2a3+a4] + x[a1]*lam[a1+a2+2a3]",
                 "coordinate at a2+2a3"));
  v.push_back(eq("core-tangent-mu-a2+a3", core, T, "mu[a2+a3] = -x[a4]*lam[a2+a3+a4] + x[a3+a4]*lam[a2+2a3+a4]",
                 "coordinate at a2+a3"));
  v.push_back(eq("core-tangent-mu-a2", core, T, "mu[a2] = -x[a3+a4]*lam[a2+a3+a4] + x[a1]*lam[a1+a2]",
                 "coordinate at a2"));
  v.push_back(eq("core-tangent-mu-a1", core, T, "mu[a1] = -x[a2]*lam[a1+a2] - x[a2+2a3]*lam[a1+a2+2a3]",
                 "coordinate at a1"));
  v.push_back(eq("core-tangent-mu-a3+a4", core, T,
                 "mu[a3+a4] = x[a2]*lam[a2+a3+a4] - x[a2+a3]*lam[a2+2a3+a4]", "coordinate at a3+a4"));
  v.push_back(eq("core-tangent-mu-a4", core, T, "mu[a4] = x[a2+a3]*lam[a2+a3+a4] + x[a2+2a3]*lam[a2+2a3+a4]",
                 "coordinate at a4"));
  v.push_back(span("core-span-a2", core, "a2", {"a2+2a3", "a2+a3"}, cond,
                   "mu[a2] lies in the span of mu[a2+2a3], mu[a2+a3] iff the binomial condition holds"));
  v.push_back(span("core-span-a4", core, "a4", {"a1", "a3+a4"}, cond,
                   "mu[a4] lies in the span of mu[a1], mu[a3+a4] iff the binomial condition holds"));

  // Group coordinates for {a4, a3+a4, a2, a2+2a3}.
  v.push_back(eq("d4-group-mu-a2+2a3", d4, G, "mu[a2+2a3] = lam[a2+2a3]", "top coordinate"));
  v.push_back(eq("d4-group-mu-a2+a3", d4, G, "mu[a2+a3] = 2*x[a3]*lam[a2+2a3]", "coordinate at a2+a3"));
  v.push_back(eq("d4-group-mu-a2", d4, G,
                 "mu[a2] = lam[a2] - x[a3]^2*lam[a2+2a3] = lam[a2] - mu[a2+a3]^2/(4*mu[a2+2a3])",
                 "coordinate at a2; the quotient is mu[a2+a3]^2 over 4 mu[a2+2a3]"));
  v.push_back(eq("d4-group-mu-a3+a4", d4, G, "mu[a3+a4] = lam[a3+a4]", "coordinate at a3+a4"));
  v.push_back(eq("d4-group-mu-a4", d4, G,
                 "mu[a4] = lam[a4] + x[a3]*lam[a3+a4] = lam[a4] + mu[a2+a3]*mu[a3+a4]/(2*mu[a2+2a3])",
                 "coordinate at a4"));

  // Largest root a2+2a3 together with a2+a3+a4 and a4.
  const std::vector<std::string> b3 = {"a2+2a3", "a2+a3+a4", "a4"};
  v.push_back(eq("b3-group-mu-a2+a3", b3, G, "mu[a2+a3] = x[a4]*lam[a2+a3+a4] - 2*x[a3]*lam[a2+2a3]",
                 "coordinate at a2+a3"));
  v.push_back(eq("b3-group-mu-a3+a4", b3, G, "mu[a3+a4] = -x[a2]*lam[a2+a3+a4]", "coordinate at a3+a4"));
  v.push_back(eq("b3-group-mu-a3", b3, G,
                 "mu[a3] = 2*x[a2+a3]*lam[a2+2a3] + x[a2]*x[a3]*lam[a2+2a3] - x[a2]*x[a4]*lam[a2+a3+a4]",
                 "coordinate at a3"));
  // The middle expression carries -x[a2+a3]; only that sign makes it agree
  // with the quotient on the right.
  v.push_back(eq("b3-group-mu-a4", b3, G,
                 "mu[a4] = lam[a4] - x[a2+a3]*lam[a2+a3+a4] + 1/2*x[a2]*x[a3]*lam[a2+a3+a4]"
                 " = lam[a4] + (mu[a2+a3]*mu[a3+a4] - mu[a2+a3+a4]*mu[a3])/(2*mu[a2+2a3])",
                 "coordinate at a4 through higher coordinates"));

  // Largest root a1+a2+a3.
  const std::vector<std::string> c3 = {"a1+a2+a3", "a2+2a3+a4", "a2"};
  v.push_back(eq("c3-group-mu-a1+a2", c3, G, "mu[a1+a2] = -x[a3]*lam[a1+a2+a3]", "coordinate at a1+a2"));
  v.push_back(eq("c3-group-mu-a1", c3, G,
                 "mu[a1] = -x[a2+a3]*lam[a1+a2+a3] + 1/2*x[a2]*x[a3]*lam[a1+a2+a3]", "coordinate at a1"));
  v.push_back(eq("c3-group-mu-a2+2a3", c3, G, "mu[a2+2a3] = -x[a4]*lam[a2+2a3+a4]", "coordinate at a2+2a3"));
  v.push_back(eq("c3-group-mu-a2+a3+a4", c3, G,
                 "mu[a2+a3+a4] = x[a3]*lam[a2+2a3+a4] = -mu[a1+a2]*mu[a2+2a3+a4]/mu[a1+a2+a3]",
                 "coordinate at a2+a3+a4"));
  v.push_back(eq("c3-group-mu-a2+a3", c3, G,
                 "mu[a2+a3] = x[a1]*lam[a1+a2+a3] + x[a3+a4]*lam[a2+2a3+a4] - 3/2*x[a3]*x[a4]*lam[a2+2a3+a4]",
                 "coordinate at a2+a3"));
  v.push_back(eq("c3-group-mu-a2", c3, G,
                 "mu[a2] = lam[a2] - x[a1]*x[a3]*lam[a1+a2+a3] - x[a3+a4]*x[a3]*lam[a2+2a3+a4]"
                 " + 1/2*x[a3]^2*x[a4]*lam[a2+2a3+a4]"
                 " = lam[a2] + mu[a1+a2]*mu[a2+a3]/mu[a1+a2+a3] + mu[a2+2a3]*mu[a1+a2]^2/mu[a1+a2+a3]^2",
                 "coordinate at a2 through higher coordinates"));
  v.push_back(eq("c3-group-mu-a3+a4", c3, G,
                 "mu[a3+a4] = -x[a2+a3]*lam[a2+2a3+a4] + 1/2*x[a2]*x[a3]*lam[a2+2a3+a4]"
                 " = mu[a1]*mu[a2+2a3+a4]/mu[a1+a2+a3]",
                 "coordinate at a3+a4 through higher coordinates"));

  // Largest root a1+a2+a3+a4.
  const std::vector<std::string> c4 = {"a1+a2+a3+a4", "a2+2a3+2a4", "a2+2a3+a4", "a2+2a3", "a2"};
  v.push_back(eq("c4-group-mu-a2", c4, G,
                 "mu[a2] = lam[a2] - mu[a1+a2]^2*mu[a2+2a3+2a4]/mu[a1+a2+a3+a4]^2"
                 " + mu[a1+a2]*mu[a2+a3+a4]/mu[a1+a2+a3+a4] - x[a3]^2*lam[a2+2a3]",
                 "coordinate at a2"));
  const std::vector<std::string> c4a = {"a1+a2+a3+a4", "a2+2a3+2a4", "a2+2a3+a4", "a3"};
  v.push_back(eq("c4-group-mu-a3", c4a, G,
                 "mu[a3] = lam[a3] + (mu[a1+a2+a3]*mu[a3+a4] + mu[a1]*mu[a2+2a3+a4])/mu[a1+a2+a3+a4]"
                 " + 2*mu[a1+a2+a3]*mu[a1]*mu[a2+2a3+2a4]/mu[a1+a2+a3+a4]^2",
                 "coordinate at a3 when lam[a2+2a3] vanishes"));
  const std::vector<std::string> c4b = {"a1+a2+a3+a4", "a2+2a3+2a4", "a2+2a3+a4", "a2+a3"};
  v.push_back(eq("c4-group-mu-a2+a3", c4b, G,
                 "mu[a2+a3] = lam[a2+a3] + (-mu[a2+2a3+a4]*mu[a1+a2] + mu[a1+a2+a3]*mu[a2+a3+a4])/mu[a1+a2+a3+a4]"
                 " - 2*mu[a2+2a3+2a4]*mu[a1+a2+a3]*mu[a1+a2]/mu[a1+a2+a3+a4]^2",
                 "coordinate at a2+a3 when lam[a2+2a3] vanishes"));

  // Largest root a1+a2+2a3: the two reduced supports.
  const std::vector<std::string> e1 = {"a1+a2+2a3", "a1+a2+a3+a4"};
  v.push_back(eq("e1-group-mu-a2+a3", e1, G, "mu[a2+a3] = mu[a1+a2+a3]*mu[a2+2a3]/mu[a1+a2+2a3]",
                 "coordinate at a2+a3"));
  v.push_back(eq("e1-group-mu-a2", e1, G, "mu[a2] = mu[a1+a2]*mu[a2+2a3]/mu[a1+a2+2a3]", "coordinate at a2"));
  v.push_back(eq("e1-group-mu-a4", e1, G,
                 "mu[a4] = (-mu[a3]*mu[a1+a2+a3+a4] - mu[a1+a2+a3]*mu[a3+a4])/(2*mu[a1+a2+2a3])",
                 "coordinate at a4; the second product uses mu[a1+a2+a3]"));
  const std::vector<std::string> e2 = {"a1+a2+2a3", "a2+2a3+a4"};
  v.push_back(eq("e2-group-mu-a2", e2, G,
                 "mu[a2] = -mu[a1+a2+a3]*mu[a2+a3]/(2*mu[a1+a2+2a3])"
                 " + mu[a1+a2+a3]^2*mu[a2+2a3]/(4*mu[a1+a2+2a3]^2)",
                 "coordinate at a2"));
  v.push_back(eq("e2-group-mu-a4", e2, G,
                 "mu[a4] = (mu[a1+a2+a3]*mu[a3+a4] - 2*mu[a1]*mu[a2+2a3+a4])/(2*mu[a1+a2+2a3])",
                 "coordinate at a4"));

  // Transport polynomials.
  v.push_back(eq("t-a3-a2+2a3+a4", {"a2+2a3+a4"}, G,
                 "T[a3,a2+2a3+a4] = -x[a2+a3+a4] + 1/2*x[a2]*x[a3+a4] + 3/2*x[a4]*x[a2+a3] - 2/3*x[a2]*x[a3]*x[a4]",
                 "degree-three transport polynomial"));
  v.push_back(eq("t-a2-a2+2a3", {"a2+2a3"}, G, "T[a2,a2+2a3] = -x[a3]^2", "transport into a2+2a3"));
  v.push_back(eq("t-a4-a3+a4", {"a3+a4"}, G, "T[a4,a3+a4] = x[a3]", "transport into a3+a4"));

  // The a2+2a3 family and the a4 coordinate of the first reduced support
  // follow a convention differing from the rest in a few basis signs.
  const auto global = declared_twist_roots(SystemKind::F4);
  for (auto& s : v) {
    if (s.id.rfind("b3-", 0) == 0) s.twist = detail::toggle(global, {"a2+a3", "a3+a4"});
    else if (s.id == "e1-group-mu-a4") s.twist = detail::toggle(global, {"a3+a4"});
    else s.twist = global;
  }
  return v;
}

}  // namespace nilorb
