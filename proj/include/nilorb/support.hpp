#pragma once
// Sets of positive roots stored as bitmasks (bit i = root index i).

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootsys.hpp"

namespace nilorb {

struct Support {
  std::uint32_t bits = 0;

  static Support of(std::initializer_list<int> idx) {
    Support s;
    for (int i : idx) s.insert(i);
    return s;
  }
  static Support from_indices(const std::vector<int>& idx) {
    Support s;
    for (int i : idx) s.insert(i);
    return s;
  }

  bool contains(int i) const { return i >= 0 && (bits >> i) & 1u; }
  void insert(int i) {
    if (i < 0 || i >= 32) throw std::out_of_range("root index out of range for a support");
    bits |= 1u << i;
  }
  void erase(int i) { bits &= ~(1u << i); }
  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  int max() const { return empty() ? -1 : 31 - std::countl_zero(bits); }
  int min() const { return empty() ? -1 : std::countr_zero(bits); }

  // Canonical serialization order: descending root index.
  std::vector<int> descending() const {
    std::vector<int> out;
    for (int i = 31; i >= 0; --i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  friend bool operator==(Support a, Support b) { return a.bits == b.bits; }
  friend bool operator!=(Support a, Support b) { return a.bits != b.bits; }
  friend bool operator<(Support a, Support b) { return a.bits < b.bits; }
};

inline std::string format_support(const RootSystem& rs, Support d) {
  if (d.empty()) return "{}";
  std::string s = "{";
  bool first = true;
  for (int i : d.descending()) {
    if (!first) s += ", ";
    s += rs.name(i);
    first = false;
  }
  return s + "}";
}

// Fixture form: space-separated digit tokens, "-" for the empty support.
inline std::string support_digits(const RootSystem& rs, Support d) {
  if (d.empty()) return "-";
  std::string s;
  for (int i : d.descending()) {
    if (!s.empty()) s += ' ';
    s += rs.digits(i);
  }
  return s;
}

inline Support parse_support_digits(const RootSystem& rs, const std::string& line) {
  std::istringstream in(line);
  std::string tok;
  Support d;
  while (in >> tok) {
    if (tok == "-") continue;
    d.insert(rs.parse_digits(tok));
  }
  return d;
}

// Comma-separated root names, e.g. "a1+a2, a2+2a3".
inline Support parse_support_names(const RootSystem& rs, const std::string& text) {
  Support d;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char c : tok)
      if (c != ' ' && c != '{' && c != '}') t += c;
    if (!t.empty()) d.insert(rs.parse(t));
  }
  return d;
}

}  // namespace nilorb
