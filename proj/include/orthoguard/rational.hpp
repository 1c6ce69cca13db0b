#pragma once

// Exact coordinates. Every geometric predicate in the library works on
// these; there is no floating-point path.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orthoguard {

using BigInt = boost::multiprecision::cpp_int;
using Coord = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Coord& c) { return boost::multiprecision::numerator(c); }
inline BigInt denominator_of(const Coord& c) { return boost::multiprecision::denominator(c); }
inline bool is_integer(const Coord& c) { return denominator_of(c) == 1; }

inline BigInt pow2(unsigned e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

struct Point {
  Coord x;
  Coord y;

  Point() = default;
  Point(Coord px, Coord py) : x(std::move(px)), y(std::move(py)) {}
  Point(long long px, long long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

/// Parses "num" or "num/den" (optional leading '-', den > 0). The result is
/// canonical (reduced, positive denominator).
inline Coord parse_coord(std::string_view text) {
  auto digits = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!digits(num, true)) throw std::invalid_argument("malformed coordinate '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Coord(BigInt(std::string(num)));
  const std::string_view den = text.substr(slash + 1);
  if (!digits(den, false)) throw std::invalid_argument("malformed coordinate '" + std::string(text) + "'");
  BigInt d(std::string{den});
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Coord(BigInt(std::string(num)), d);
}

inline std::string format_coord(const Coord& c) {
  std::string s = numerator_of(c).str();
  if (!is_integer(c)) s += "/" + denominator_of(c).str();
  return s;
}

inline std::string format_point(const Point& p) {
  return "(" + format_coord(p.x) + ", " + format_coord(p.y) + ")";
}

}  // namespace orthoguard
