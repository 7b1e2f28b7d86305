// Command-line front end: one subcommand per library operation.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "nilorb/identities.hpp"
#include "nilorb/oracle.hpp"

using namespace nilorb;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string system = "f4";
  std::string format = "json";
  std::string out;
  std::string twist = "declared";
  unsigned threads = 1;
};

unsigned default_threads() {
  if (const char* env = std::getenv("NILORB_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("NILORB_THREADS must be a positive integer");
  }
  return 1;
}

void add_common(CLI::App* cmd, Common& c, bool with_twist) {
  cmd->add_option("--system", c.system, "Root system: f4 or g2")->check(CLI::IsMember({"f4", "g2", "F4", "G2"}));
  cmd->add_option("--format", c.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", c.out, "Write the artifact to this path instead of standard output");
  cmd->add_option("--threads", c.threads, "Worker threads (default: NILORB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  if (with_twist)
    cmd->add_option("--twist", c.twist,
                    "Basis sign change: 'declared' (default), 'none', or a comma-separated list of roots to negate");
}

SignTwist resolve_twist(const RootSystem& rs, const std::string& spec) {
  if (spec == "declared") return declared_twist(rs);
  if (spec == "none") return SignTwist(rs.size(), 1);
  SignTwist s(rs.size(), 1);
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      s[rs.parse(tok)] = -1;
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--twist: ") + e.what());
    }
  }
  return s;
}

Json support_json(const RootSystem& rs, Support d) {
  Json a = Json::array();
  for (int i : d.descending()) a.push_back(rs.name(i));
  return a;
}

std::string support_cell(const RootSystem& rs, Support d) {
  std::string s;
  for (int i : d.descending()) {
    if (!s.empty()) s += ';';
    s += rs.name(i);
  }
  return s;
}

// Emits either a JSON document, a CSV table or a text block.
struct Artifact {
  Json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string text;

  void emit(const Common& c) const {
    std::ostringstream o;
    if (c.format == "json") {
      o << json.dump(2) << '\n';
    } else if (c.format == "csv") {
      auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) {
          if (i) o << ',';
          bool quote = r[i].find_first_of(",\"") != std::string::npos;
          if (quote) {
            o << '"';
            for (char ch : r[i]) o << (ch == '"' ? "\"\"" : std::string(1, ch));
            o << '"';
          } else {
            o << r[i];
          }
        }
        o << '\n';
      };
      line(csv_header);
      for (const auto& r : csv_rows) line(r);
    } else {
      o << text;
    }
    if (c.out.empty()) {
      std::cout << o.str();
    } else {
      std::ofstream f(c.out);
      if (!f) throw UsageError("cannot write " + c.out);
      f << o.str();
    }
  }
};

int check_expect(const std::optional<long long>& expect, long long got, const std::string& what) {
  if (expect && *expect != got) {
    std::cerr << "expectation failed: " << what << " is " << got << ", expected " << *expect << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_roots(const Common& c, bool table) {
  auto rs = RootSystem::build(parse_system(c.system));
  Artifact art;
  art.json["kind"] = to_string(rs.kind());
  if (!table) {
    art.json["count"] = rs.size();
    art.json["roots"] = Json::array();
    art.csv_header = {"index", "root", "coeffs", "height"};
    for (const auto& r : rs.roots()) {
      Json co = Json::array();
      for (int k = 0; k < rs.rank(); ++k) co.push_back(r.coeffs[k]);
      art.json["roots"].push_back(
          {{"index", r.index}, {"name", rs.name(r.index)}, {"coeffs", co}, {"height", r.height}});
      art.csv_rows.push_back({std::to_string(r.index), rs.name(r.index), rs.digits(r.index), std::to_string(r.height)});
      art.text += std::to_string(r.index) + "  " + rs.name(r.index) + "  (height " + std::to_string(r.height) + ")\n";
    }
    art.json["sums"] = Json::array();
    for (int i = 0; i < rs.size(); ++i)
      for (int j = i + 1; j < rs.size(); ++j)
        if (rs.sum(i, j) >= 0) art.json["sums"].push_back({i, j, rs.sum(i, j)});
  } else {
    art.json["cells"] = Json::array();
    art.csv_header = {"row", "column", "difference", "is_root"};
    for (int i = 0; i < rs.size(); ++i)
      for (int j = 0; j < rs.size(); ++j) {
        auto cell = table_cell(rs, i, j);
        if (cell.text.empty()) continue;
        art.json["cells"].push_back(
            {{"row", rs.name(i)}, {"column", rs.name(j)}, {"difference", cell.text}, {"is_root", cell.orange}});
        art.csv_rows.push_back({rs.name(i), rs.name(j), cell.text, cell.orange ? "1" : "0"});
        art.text += rs.name(i) + " | " + rs.name(j) + " : " + cell.text + (cell.orange ? " *" : "") + '\n';
      }
  }
  art.emit(c);
  return kOk;
}

int cmd_constants(const Common& c, bool verify) {
  auto rs = RootSystem::build(parse_system(c.system));
  auto sc = StructureConstants::compute(rs).twisted(resolve_twist(rs, c.twist));
  Artifact art;
  art.json["system"] = to_string(rs.kind());
  art.json["convention"] = sc.convention();
  Json tw = Json::array();
  auto s = resolve_twist(rs, c.twist);
  for (int i = 0; i < rs.size(); ++i)
    if (s[i] == -1) tw.push_back(rs.name(i));
  art.json["negated_roots"] = tw;
  art.json["pairs"] = Json::array();
  art.csv_header = {"alpha", "beta", "sum", "N"};
  for (int a = 0; a < rs.size(); ++a)
    for (int b = a + 1; b < rs.size(); ++b) {
      int t = rs.sum(a, b);
      if (t < 0) continue;
      art.json["pairs"].push_back(
          {{"a", a}, {"b", b}, {"n", sc.n(a, b)}, {"alpha", rs.name(a)}, {"beta", rs.name(b)}, {"sum", rs.name(t)}});
      art.csv_rows.push_back({rs.name(a), rs.name(b), rs.name(t), std::to_string(sc.n(a, b))});
      art.text += "[" + rs.name(a) + ", " + rs.name(b) + "] = " + std::to_string(sc.n(a, b)) + " e(" + rs.name(t) + ")\n";
    }
  int code = kOk;
  if (verify) {
    auto chk = verify_structure(sc);
    art.json["checks"] = {{"antisymmetry_failures", chk.antisymmetry},
                          {"jacobi_failures", chk.jacobi},
                          {"magnitude_failures", chk.magnitude}};
    art.text += "checks: antisymmetry " + std::to_string(chk.antisymmetry) + ", jacobi " + std::to_string(chk.jacobi) +
                ", magnitude " + std::to_string(chk.magnitude) + " failures\n";
    if (!chk.ok()) code = kVerifyFailed;
  }
  art.emit(c);
  return code;
}

struct EnumerateArgs {
  std::string condition = "sufficient";
  std::string depth = "2";
  std::string rule = "reference";
  std::optional<long long> expect;
  std::string diff_fixture;
  bool gap = false;
};

Condition make_condition(const EnumerateArgs& e) {
  if (e.condition == "sufficient") return Condition::sufficient();
  int depth = kUnbounded;
  if (e.depth != "unbounded") {
    try {
      size_t used = 0;
      depth = std::stoi(e.depth, &used);
      if (used != e.depth.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("--depth must be a positive integer or 'unbounded'");
    }
    if (depth < 1) throw UsageError("--depth must be at least 1");
  }
  auto rule = e.rule == "branching" ? NecessaryRule::branching : NecessaryRule::reference_chain;
  return Condition::necessary_with(depth, rule);
}

int cmd_enumerate(const Common& c, const EnumerateArgs& e) {
  auto rs = RootSystem::build(parse_system(c.system));
  std::vector<Support> list;
  if (e.gap) {
    auto suff = enumerate_supports(rs, Condition::sufficient());
    std::set<Support> s(suff.begin(), suff.end());
    for (Support d : enumerate_supports(rs, make_condition(e)))
      if (!s.count(d)) list.push_back(d);
  } else {
    list = enumerate_supports(rs, make_condition(e));
  }
  Artifact art;
  art.json["system"] = to_string(rs.kind());
  art.json["condition"] = e.condition;
  if (e.condition == "necessary") {
    art.json["depth"] = e.depth;
    art.json["rule"] = e.rule;
  }
  art.json["gap_only"] = e.gap;
  art.json["count"] = list.size();
  art.json["supports"] = Json::array();
  art.csv_header = {"number", "size", "support"};
  for (size_t i = 0; i < list.size(); ++i) {
    art.json["supports"].push_back(support_json(rs, list[i]));
    art.csv_rows.push_back({std::to_string(i + 1), std::to_string(list[i].size()), support_cell(rs, list[i])});
    art.text += std::to_string(i + 1) + ". " + format_support(rs, list[i]) + '\n';
  }
  art.text += "count: " + std::to_string(list.size()) + '\n';
  int code = check_expect(e.expect, static_cast<long long>(list.size()), "support count");
  if (!e.diff_fixture.empty()) {
    auto fx = read_support_fixture(rs, e.diff_fixture);
    std::set<Support> a(list.begin(), list.end()), b(fx.begin(), fx.end());
    Json only_ours = Json::array(), only_fixture = Json::array();
    for (Support d : a)
      if (!b.count(d)) only_ours.push_back(support_json(rs, d));
    for (Support d : b)
      if (!a.count(d)) only_fixture.push_back(support_json(rs, d));
    art.json["diff"] = {{"fixture", e.diff_fixture}, {"only_enumerated", only_ours}, {"only_fixture", only_fixture}};
    art.text += "symmetric difference with fixture: " + std::to_string(only_ours.size() + only_fixture.size()) + '\n';
    if (!only_ours.empty() || !only_fixture.empty()) {
      std::cerr << "fixture mismatch: " << only_ours.size() << " supports only enumerated, " << only_fixture.size()
                << " only in the fixture\n";
      code = kVerifyFailed;
    }
  }
  art.emit(c);
  return code;
}

struct ClassifyArgs {
  std::vector<std::uint32_t> primes{13, 17};
  int trials = 30;
  std::uint64_t seed = 20240601;
  std::optional<long long> expect;
  std::string diff_fixture;
  bool final_list = false;
};

int cmd_classify(const Common& c, const ClassifyArgs& a) {
  auto rs = RootSystem::build(parse_system(c.system));
  auto sc = StructureConstants::compute(rs);
  ClassifyOptions opt = default_classify_options(rs);
  opt.twist = resolve_twist(rs, c.twist);
  opt.primes = a.primes;
  opt.trials = a.trials;
  opt.seed = a.seed;
  if (opt.trials < 30) throw UsageError("--trials must be at least 30");
  if (opt.primes.size() < 2) throw UsageError("--primes needs at least two primes");
  for (auto p : opt.primes) {
    if (!is_prime(p)) throw UsageError("--primes: " + std::to_string(p) + " is not prime");
    if (!Field::prime(p).supports_exp(rs.highest_height()))
      throw UsageError("--primes: " + std::to_string(p) + " must exceed " + std::to_string(rs.highest_height()));
  }

  Artifact art;
  art.json["system"] = to_string(rs.kind());
  art.json["ambiguous"] = Json::array();
  art.csv_header = {"number", "support", "verdict", "constraint"};
  auto amb = ambiguous_supports(rs);
  int unresolved = 0;
  std::vector<std::pair<Support, SupportStatus>> fs;
  for (Support d : enumerate_supports(rs, Condition::sufficient())) fs.push_back({d, SupportStatus{}});
  for (size_t i = 0; i < amb.size(); ++i) {
    auto st = classify_ambiguous(sc, amb[i], opt);
    std::string cons = st.constraint ? st.constraint->to_string(rs) : "";
    Json j = {{"number", i + 1}, {"support", support_json(rs, amb[i])}, {"verdict", to_string(st.verdict)}};
    if (st.constraint) j["constraint"] = cons;
    j["samples"] = {{"off_condition_in_S", st.tally[0][1]},
                    {"off_condition_not_in_S", st.tally[0][0]},
                    {"on_condition_in_S", st.tally[1][1]},
                    {"on_condition_not_in_S", st.tally[1][0]}};
    art.json["ambiguous"].push_back(j);
    art.csv_rows.push_back({std::to_string(i + 1), support_cell(rs, amb[i]), to_string(st.verdict), cons});
    art.text += "#" + std::to_string(i + 1) + " " + format_support(rs, amb[i]) + ": " + to_string(st.verdict) +
                (cons.empty() ? "" : " if " + cons) + '\n';
    if (st.verdict == Verdict::Unresolved) ++unresolved;
    if (st.verdict == Verdict::InS || st.verdict == Verdict::Conditional) fs.push_back({amb[i], st});
  }
  long long conditional = 0;
  for (const auto& [d, st] : fs) conditional += st.verdict == Verdict::Conditional;
  const long long total = static_cast<long long>(fs.size());
  art.json["final"] = {{"total", total}, {"unconditional", total - conditional}, {"conditional", conditional}};
  art.text += "final: " + std::to_string(total) + " supports (" + std::to_string(conditional) + " conditional)\n";
  int code = unresolved ? kVerifyFailed : kOk;
  if (unresolved) std::cerr << unresolved << " supports could not be resolved by sampling\n";
  if (check_expect(a.expect, total, "final support count") != kOk) code = kVerifyFailed;
  if (!a.diff_fixture.empty()) {
    auto fx = read_support_fixture(rs, a.diff_fixture);
    std::set<Support> ours, theirs(fx.begin(), fx.end());
    for (const auto& [d, st] : fs)
      if (st.verdict != Verdict::Conditional) ours.insert(d);
    long long diff = 0;
    for (Support d : ours) diff += !theirs.count(d);
    for (Support d : theirs) diff += !ours.count(d);
    art.json["fixture_symmetric_difference"] = diff;
    art.text += "unconditional vs fixture, symmetric difference: " + std::to_string(diff) + '\n';
    if (diff) {
      std::cerr << "unconditional supports differ from the fixture in " << diff << " entries\n";
      code = kVerifyFailed;
    }
  }
  if (a.final_list) {
    // One record per final support instead of the ambiguous report.
    Artifact lines;
    lines.csv_header = {"support", "verdict", "constraint"};
    std::ostringstream jl;
    for (const auto& [d, st] : fs) {
      Json idx = Json::array();
      for (int i : d.descending()) idx.push_back(i);
      Json rec = {{"support", idx}, {"verdict", to_string(st.verdict)}, {"constraint", nullptr}};
      std::string cons = st.constraint ? st.constraint->to_string(rs) : "";
      if (st.constraint) rec["constraint"] = cons;
      jl << rec.dump() << '\n';
      lines.csv_rows.push_back({support_cell(rs, d), to_string(st.verdict), cons});
      lines.text += format_support(rs, d) + (cons.empty() ? "" : "  if " + cons) + '\n';
    }
    if (c.format == "json") {
      Common raw = c;
      raw.format = "text";
      lines.text = jl.str();
      lines.emit(raw);
    } else {
      lines.emit(c);
    }
    return code;
  }
  art.emit(c);
  return code;
}

int cmd_count(const Common& c, const std::optional<long> q, std::optional<long long> expect) {
  auto rs = RootSystem::build(parse_system(c.system));
  auto sc = StructureConstants::compute(rs);
  ClassifyOptions opt = default_classify_options(rs);
  opt.twist = resolve_twist(rs, c.twist);
  auto coeffs = count_polynomial(final_S(sc, opt));
  Artifact art;
  art.json["system"] = to_string(rs.kind());
  art.json["basis"] = "(q-1)^k";
  art.json["coeffs"] = coeffs;
  long long sum = 0;
  for (auto v : coeffs) sum += v;
  art.json["coefficient_sum"] = sum;
  art.csv_header = {"k", "coefficient"};
  for (size_t k = 0; k < coeffs.size(); ++k) art.csv_rows.push_back({std::to_string(k), std::to_string(coeffs[k])});
  std::string poly;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (!poly.empty()) poly += " + ";
    poly += std::to_string(coeffs[k]) + (k ? "(q-1)^" + std::to_string(k) : "");
  }
  art.text = "count(q) = " + poly + '\n';
  int code = kOk;
  if (q) {
    if (*q < 2) throw UsageError("--q must be at least 2");
    mpz_class v = evaluate_count(coeffs, *q);
    art.json["q"] = *q;
    if (v.fits_slong_p()) art.json["value"] = v.get_si();
    else art.json["value"] = v.get_str();
    art.text += "count(" + std::to_string(*q) + ") = " + v.get_str() + '\n';
    if (expect && mpz_class(static_cast<long>(*expect)) != v) {
      std::cerr << "expectation failed: count is " << v.get_str() << ", expected " << *expect << '\n';
      code = kVerifyFailed;
    }
  } else {
    code = check_expect(expect, sum, "coefficient sum");
  }
  art.emit(c);
  return code;
}

int cmd_identities(const Common& c, const std::string& only, bool list_only) {
  auto rs = RootSystem::build(SystemKind::F4);
  auto sc = StructureConstants::compute(rs);
  Artifact art;
  art.json["results"] = Json::array();
  art.csv_header = {"identity", "status", "detail"};
  if (list_only) art.csv_header = {"identity", "description"};
  int passed = 0, total = 0;
  for (const auto& spec : builtin_identities()) {
    if (!only.empty() && spec.id != only) continue;
    ++total;
    if (list_only) {
      art.json["results"].push_back({{"identity", spec.id}, {"description", spec.description}});
      art.csv_rows.push_back({spec.id, spec.description});
      art.text += spec.id + ": " + spec.description + '\n';
      continue;
    }
    auto r = verify_identity(sc, spec);
    passed += r.pass;
    Json j = {{"identity", r.id}, {"status", r.pass ? "pass" : "fail"}};
    if (!r.pass) j["detail"] = r.detail;
    art.json["results"].push_back(j);
    art.csv_rows.push_back({r.id, r.pass ? "pass" : "fail", r.detail});
    art.text += (r.pass ? "pass  " : "FAIL  ") + r.id + (r.pass ? "" : "  " + r.detail) + '\n';
  }
  if (total == 0) throw UsageError("no identity named '" + only + "'");
  if (!list_only) art.json["passed"] = passed;
  art.json["total"] = total;
  art.emit(c);
  return list_only || passed == total ? kOk : kVerifyFailed;
}

struct OracleArgs {
  std::optional<std::uint32_t> q;  // default: 7 for G2, 13 for F4
  bool verify_canonicals = false;
  bool equations = false;
  std::string cubic = "derived";
  std::vector<std::uint32_t> xi;  // flattened pairs (xi(a+b), xi(3a+b))
  int forms = 20;
  int actions = 100000;
  std::uint64_t seed = 7;
  std::optional<long long> expect;
};

int cmd_oracle(const Common& c, const OracleArgs& a) {
  auto rs = RootSystem::build(parse_system(c.system));
  const std::uint32_t q = a.q.value_or(rs.kind() == SystemKind::F4 ? 13 : 7);
  if (!is_prime(q)) throw UsageError("--q must be prime");
  if (!Field::prime(q).supports_exp(rs.highest_height()))
    throw UsageError("--q must exceed " + std::to_string(rs.highest_height()) + " for " + to_string(rs.kind()));
  auto sc = StructureConstants::compute(rs);
  Artifact art;
  int code = kOk;
  art.csv_header = {"key", "value"};
  auto put = [&](const std::string& k, const Json& v) {
    art.json[k] = v;
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    art.csv_rows.push_back({k, s});
    art.text += k + ": " + s + '\n';
  };

  if (rs.kind() == SystemKind::F4) {
    // Full partition is out of reach; run the randomized distinctness probe.
    auto opt = default_classify_options(rs);
    opt.twist = resolve_twist(rs, c.twist);
    auto fs = final_S(sc, opt);
    auto forms = random_canonical_forms(sc, fs, opt.twist, q, a.forms, a.seed);
    DistinctnessOptions dopt;
    dopt.q = q;
    dopt.forms = a.forms;
    dopt.actions = a.actions;
    dopt.seed = a.seed;
    dopt.threads = c.threads;
    auto rep = distinctness_probe(sc, forms, dopt);
    put("q", q);
    put("system", "F4");
    put("forms", rep.forms);
    put("actions", rep.actions);
    put("checks", rep.checks);
    put("images_in_S", rep.landed_in_s);
    put("violations", rep.violations);
    if (rep.violations) code = kVerifyFailed;
    art.emit(c);
    return code;
  }

  auto part = orbit_partition(sc, q);
  put("q", q);
  put("orbits", part.orbits());
  if (check_expect(a.expect, static_cast<long long>(part.orbits()), "orbit count") != kOk) code = kVerifyFailed;
  if (a.verify_canonicals) {
    auto listed = final_S(sc, default_classify_options(rs));
    std::vector<Support> ds;
    for (const auto& [d, st] : listed) ds.push_back(d);
    auto rep = verify_unique_canonicals(sc, part, ds);
    auto rk = orbit_size_rank_check(sc, part);
    put("canonical_violations", rep.violations.size());
    put("rank_mismatches", rk.mismatches.size());
    put("support_histogram_mismatches", rep.histogram_mismatches.size());
    if (!rep.violations.empty() || !rk.mismatches.empty() || !rep.histogram_mismatches.empty()) code = kVerifyFailed;
  }
  if (a.equations) {
    int k = a.cubic == "printed" ? kPrintedCubicCoefficient : kDerivedCubicCoefficient;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> xs;
    if (a.xi.empty()) {
      for (std::uint32_t i = 1; i <= 3 && i < q; ++i)
        for (std::uint32_t j = 1; j <= 2 && j < q; ++j) xs.push_back({i, j});
    } else {
      if (a.xi.size() % 2) throw UsageError("--xi takes pairs of values");
      for (size_t i = 0; i < a.xi.size(); i += 2) xs.push_back({a.xi[i], a.xi[i + 1]});
    }
    Json eq = Json::array();
    int failed = 0;
    for (auto [x1, x2] : xs) {
      if (x1 % q == 0 || x2 % q == 0) throw UsageError("--xi values must be nonzero mod q");
      auto r = g2_equation_check(sc, part, x1, x2, k);
      eq.push_back({{"xi_a+b", x1},
                    {"xi_3a+b", x2},
                    {"orbit_size", r.orbit_size},
                    {"system1_mismatches", r.system1_mismatches},
                    {"system2_mismatches", r.system2_mismatches},
                    {"extension_orbits", r.extension_orbits},
                    {"union_holds", r.union_holds},
                    {"pass", r.pass()}});
      failed += !r.pass();
    }
    put("cubic_coefficient", k);
    art.json["equations"] = eq;
    art.text += "equation checks: " + std::to_string(xs.size() - failed) + "/" + std::to_string(xs.size()) + " pass\n";
    if (failed) code = kVerifyFailed;
  }
  art.emit(c);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nilorb: canonical forms for coadjoint orbits of the unipotent radical of a Borel subgroup of type F4 or G2.\n"
      "Every subcommand prints a machine-readable artifact (JSON by default) and exits 0 on success,\n"
      "1 when a verification or --expect assertion fails, and 2 on a usage error."};
  app.require_subcommand(1);
  Common common;
  try {
    common.threads = default_threads();
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  }

  auto* roots = app.add_subcommand(
      "roots", "Positive roots in the lexicographic order (index, name, height); with --table, the difference table "
               "whose cell (alpha, beta) holds beta-alpha when that is a sum of positive roots, marking actual roots.");
  bool table = false;
  add_common(roots, common, false);
  roots->add_flag("--table", table, "Emit the difference table instead of the root list");

  auto* constants = app.add_subcommand(
      "constants", "Chevalley structure constants N(alpha,beta) for alpha before beta, after the chosen basis sign "
                   "change; --verify also checks antisymmetry, the Jacobi identity and |N| = string bound + 1.");
  bool verify = false;
  add_common(constants, common, true);
  constants->add_flag("--verify", verify, "Run the structural checks; exit 1 if any fails");

  auto* enumerate = app.add_subcommand(
      "enumerate", "Pruned traversal of supports under the sufficient rank test (878 supports for F4) or the "
                   "necessary chain test (911 at depth 2); --gap lists supports passing necessary but not sufficient "
                   "(the 33 ambiguous supports).");
  EnumerateArgs ea;
  add_common(enumerate, common, false);
  enumerate->add_option("--condition", ea.condition, "sufficient or necessary")
      ->check(CLI::IsMember({"sufficient", "necessary"}));
  enumerate->add_option("--depth", ea.depth, "Chain extensions for the necessary test: a positive integer or 'unbounded'");
  enumerate->add_option("--rule", ea.rule, "Necessary test variant: reference (linear chain) or branching")
      ->check(CLI::IsMember({"reference", "branching"}));
  enumerate->add_flag("--gap", ea.gap, "Only supports that pass this condition but fail the sufficient test");
  enumerate->add_option("--expect", ea.expect, "Exit 1 unless exactly this many supports are produced");
  enumerate->add_option("--diff-fixture", ea.diff_fixture,
                        "Print the symmetric difference with a support fixture file; exit 1 if non-empty");

  auto* classify = app.add_subcommand(
      "classify", "Resolve each ambiguous support by sampling random forms over prime fields: in S always, never, or "
                  "exactly when the binomial coordinate condition holds. Reports the final list (883 supports for "
                  "F4, 3 of them conditional).");
  ClassifyArgs ca;
  add_common(classify, common, true);
  classify->add_option("--primes", ca.primes, "Sampling primes (at least two, each above the highest-root height)");
  classify->add_option("--trials", ca.trials, "Samples per prime and side of the condition (at least 30)");
  classify->add_option("--seed", ca.seed, "Random seed");
  classify->add_option("--expect", ca.expect, "Exit 1 unless the final list has this many supports");
  classify->add_flag("--final", ca.final_list,
                     "Emit the final list, one record per support (JSON lines in json format)");
  classify->add_option("--diff-fixture", ca.diff_fixture,
                       "Compare the unconditional supports with a fixture file; exit 1 on any difference");

  auto* count = app.add_subcommand(
      "count", "Orbit-count polynomial in the basis (q-1)^k, one term per final support (F4: 1 24 140 288 256 124 40 "
               "9 1, summing to 883); --q evaluates it.");
  std::optional<long> cq;
  std::optional<long long> cexpect;
  add_common(count, common, true);
  count->add_option("--q", cq, "Evaluate the count at this field size");
  count->add_option("--expect", cexpect, "Exit 1 unless the value (or the coefficient sum without --q) matches");

  auto* identities = app.add_subcommand(
      "identities", "Check the built-in coordinate identities for F4 forms as exact polynomial identities over the "
                    "rationals, with generic coordinates.");
  std::string only;
  bool list_only = false;
  add_common(identities, common, false);
  identities->add_option("--id", only, "Check a single identity");
  identities->add_flag("--list", list_only, "List the identities without checking them");

  auto* oracle = app.add_subcommand(
      "oracle", "Brute-force ground truth. G2: the full orbit partition over F_q (433 orbits at q=7, 1561 at q=11); "
                "--verify-canonicals checks one S-member per orbit and orbit size = q^rank; --equations checks the "
                "orbit equations for D = {a+b, 3a+b}. F4: random group actions on random S-members never reach "
                "another S-member.");
  OracleArgs oa;
  add_common(oracle, common, true);
  oracle->add_option("--q", oa.q, "Field size, a prime above the highest-root height (default 7 for G2, 13 for F4)");
  oracle->add_flag("--verify-canonicals", oa.verify_canonicals, "G2: unique canonical form and orbit-size checks");
  oracle->add_flag("--equations", oa.equations, "G2: orbit equation checks");
  oracle->add_option("--cubic", oa.cubic, "Cubic coefficient in the G2 equations: derived (2) or printed (5)")
      ->check(CLI::IsMember({"derived", "printed"}));
  oracle->add_option("--xi", oa.xi, "G2: pairs xi(a+b) xi(3a+b) to test (default: six pairs)");
  oracle->add_option("--forms", oa.forms, "F4: number of random S-members")->check(CLI::PositiveNumber);
  oracle->add_option("--actions", oa.actions, "F4: random group elements per form")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oa.seed, "F4: random seed");
  oracle->add_option("--expect", oa.expect, "G2: exit 1 unless the partition has this many orbits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*roots) return cmd_roots(common, table);
    if (*constants) return cmd_constants(common, verify);
    if (*enumerate) return cmd_enumerate(common, ea);
    if (*classify) return cmd_classify(common, ca);
    if (*count) return cmd_count(common, cq, cexpect);
    if (*identities) return cmd_identities(common, only, list_only);
    if (*oracle) return cmd_oracle(common, oa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
