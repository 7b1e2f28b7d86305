#pragma once
// Positive roots of F4 and G2 in simple-root coordinates, ordered
// lexicographically, with the sum table and root strings.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilorb {

enum class SystemKind { F4, G2 };

inline std::string to_string(SystemKind k) { return k == SystemKind::F4 ? "F4" : "G2"; }

inline SystemKind parse_system(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), ::toupper);
  if (s == "F4") return SystemKind::F4;
  if (s == "G2") return SystemKind::G2;
  throw std::invalid_argument("unknown root system '" + s + "' (expected f4 or g2)");
}

constexpr int kMaxRank = 4;
using Coeffs = std::array<int, kMaxRank>;

struct Root {
  Coeffs coeffs{};
  int index = 0;
  int height = 0;
};

class RootSystem {
 public:
  static RootSystem build(SystemKind kind);

  SystemKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(roots_.size()); }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(int i) const { return roots_.at(i); }
  int highest() const { return size() - 1; }
  int highest_height() const { return roots_.back().height; }
  const std::vector<std::string>& simple_labels() const { return labels_; }

  // Index of root(i)+root(j), or -1.
  int sum(int i, int j) const { return sum_[i * size() + j]; }
  // Index of root(j)-root(i) when it is a positive root, or -1.
  int diff(int i, int j) const { return diff_[i * size() + j]; }
  // root(j) - root(i) is a nonzero non-negative combination of simple roots.
  bool diff_decomposable(int i, int j) const {
    if (i == j) return false;
    for (int k = 0; k < rank_; ++k)
      if (roots_[j].coeffs[k] < roots_[i].coeffs[k]) return false;
    return true;
  }

  std::optional<int> find(const Coeffs& c) const {
    auto it = by_coeffs_.find(c);
    if (it == by_coeffs_.end()) return std::nullopt;
    return it->second;
  }
  bool is_root(const Coeffs& c) const {
    Coeffs neg{};
    for (int k = 0; k < kMaxRank; ++k) neg[k] = -c[k];
    return find(c).has_value() || find(neg).has_value();
  }

  // Largest p >= 0 with beta - p*alpha in the full root system.
  int string_bound(int a, int b) const {
    const Coeffs& ca = roots_.at(a).coeffs;
    const Coeffs& cb = roots_.at(b).coeffs;
    if (a == b) throw std::invalid_argument("string_bound needs alpha != beta");
    int p = 0;
    for (;;) {
      Coeffs c{};
      for (int k = 0; k < kMaxRank; ++k) c[k] = cb[k] - (p + 1) * ca[k];
      if (!is_root(c)) return p;
      ++p;
    }
  }

  // S_gamma = { alpha : gamma - alpha is a positive root }.
  std::vector<int> singular_set(int g) const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
      if (diff(a, g) >= 0) out.push_back(a);
    return out;
  }

  // Doubled symmetric bilinear form; integral for both systems.
  int inner(const Coeffs& x, const Coeffs& y) const {
    int s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) s += x[i] * gram_[i][j] * y[j];
    return s;
  }
  int norm(int i) const { return inner(roots_[i].coeffs, roots_[i].coeffs); }

  std::string name(int i) const { return format_coeffs(roots_.at(i).coeffs); }
  std::string format_coeffs(const Coeffs& c) const {
    std::string out;
    for (int k = 0; k < rank_; ++k) {
      if (c[k] == 0) continue;
      if (!out.empty()) out += '+';
      if (c[k] != 1) out += std::to_string(c[k]);
      out += labels_[k];
    }
    return out.empty() ? "0" : out;
  }
  // Accepts forms like "a1+a2+2a3" (F4) or "3a+2b" (G2), ignoring spaces.
  int parse(const std::string& text) const {
    Coeffs c{};
    std::string s;
    for (char ch : text)
      if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("empty root name");
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) {
      size_t pos = 0;
      while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
      int mult = pos == 0 ? 1 : std::stoi(term.substr(0, pos));
      std::string label = term.substr(pos);
      auto it = std::find(labels_.begin(), labels_.end(), label);
      if (it == labels_.end()) throw std::invalid_argument("bad root name '" + text + "'");
      c[it - labels_.begin()] += mult;
    }
    auto idx = find(c);
    if (!idx) throw std::invalid_argument("'" + text + "' is not a positive root of " + to_string(kind_));
    return *idx;
  }
  // Compact digit form used by the fixtures, e.g. "1221".
  std::string digits(int i) const {
    std::string s;
    for (int k = 0; k < rank_; ++k) s += static_cast<char>('0' + roots_.at(i).coeffs[k]);
    return s;
  }
  int parse_digits(const std::string& d) const {
    if (static_cast<int>(d.size()) != rank_) throw std::invalid_argument("bad root digits '" + d + "'");
    Coeffs c{};
    for (int k = 0; k < rank_; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(d[k]))) throw std::invalid_argument("bad root digits '" + d + "'");
      c[k] = d[k] - '0';
    }
    auto idx = find(c);
    if (!idx) throw std::invalid_argument("'" + d + "' is not a positive root");
    return *idx;
  }

 private:
  SystemKind kind_{};
  int rank_ = 0;
  std::vector<std::vector<int>> gram_;
  std::vector<std::string> labels_;
  std::vector<Root> roots_;
  std::map<Coeffs, int> by_coeffs_;
  std::vector<int> sum_, diff_;
};

// Lexicographic comparison on simple-root coefficients: a > b.
inline bool lex_greater(const Coeffs& a, const Coeffs& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

inline RootSystem RootSystem::build(SystemKind kind) {
  RootSystem rs;
  rs.kind_ = kind;
  if (kind == SystemKind::F4) {
    rs.rank_ = 4;
    rs.labels_ = {"a1", "a2", "a3", "a4"};
    rs.gram_ = {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
  } else {
    rs.rank_ = 2;
    rs.labels_ = {"a", "b"};
    rs.gram_ = {{2, -3}, {-3, 6}};
  }
  const int r = rs.rank_;

  // Closure by root strings, one height at a time.
  std::vector<Coeffs> found;
  std::vector<Coeffs> level;
  for (int i = 0; i < r; ++i) {
    Coeffs c{};
    c[i] = 1;
    level.push_back(c);
  }
  auto contains = [&](const Coeffs& c) { return std::find(found.begin(), found.end(), c) != found.end(); };
  while (!level.empty()) {
    for (auto& c : level) found.push_back(c);
    std::vector<Coeffs> next;
    for (const auto& b : level) {
      for (int i = 0; i < r; ++i) {
        Coeffs ai{};
        ai[i] = 1;
        int p = 0;
        for (;;) {
          Coeffs c = b;
          c[i] -= p + 1;
          if (!contains(c)) break;
          ++p;
        }
        // <b, a_i^vee> = 2(b, a_i)/(a_i, a_i)
        int pairing = 2 * rs.inner(b, ai) / rs.inner(ai, ai);
        if (p - pairing > 0) {
          Coeffs c = b;
          c[i] += 1;
          if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(c);
        }
      }
    }
    level = next;
  }

  std::sort(found.begin(), found.end(), [](const Coeffs& a, const Coeffs& b) { return lex_greater(b, a); });
  for (size_t i = 0; i < found.size(); ++i) {
    Root rt;
    rt.coeffs = found[i];
    rt.index = static_cast<int>(i);
    for (int k = 0; k < r; ++k) rt.height += found[i][k];
    rs.roots_.push_back(rt);
    rs.by_coeffs_[found[i]] = static_cast<int>(i);
  }
  const int n = rs.size();
  rs.sum_.assign(n * n, -1);
  rs.diff_.assign(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Coeffs s{}, d{};
      for (int k = 0; k < kMaxRank; ++k) {
        s[k] = rs.roots_[i].coeffs[k] + rs.roots_[j].coeffs[k];
        d[k] = rs.roots_[j].coeffs[k] - rs.roots_[i].coeffs[k];
      }
      if (auto x = rs.find(s)) rs.sum_[i * n + j] = *x;
      if (auto x = rs.find(d)) rs.diff_[i * n + j] = *x;
    }
  return rs;
}

// One cell of the difference table: row i, column j.
struct TableCell {
  std::string text;  // "" blank, "0" diagonal, otherwise root(j) - root(i)
  bool orange = false;
};

inline TableCell table_cell(const RootSystem& rs, int i, int j) {
  if (i == j) return {"0", false};
  if (!rs.diff_decomposable(i, j)) return {"", false};
  Coeffs d{};
  for (int k = 0; k < kMaxRank; ++k) d[k] = rs.root(j).coeffs[k] - rs.root(i).coeffs[k];
  return {rs.format_coeffs(d), rs.diff(i, j) >= 0};
}

}  // namespace nilorb
