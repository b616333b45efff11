#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>

namespace astopo {

/// Autonomous system number. Any 32-bit value is a valid identifier; whether
/// it is private or reserved is decided by ingest filtering, not here.
struct Asn {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(Asn, Asn) = default;
};

inline std::ostream& operator<<(std::ostream& os, Asn asn) { return os << asn.value; }

/// Parses a plain decimal ASN. Rejects signs, whitespace and overflow.
inline std::optional<Asn> parse_asn(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::uint32_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return Asn{value};
}

/// Undirected link between two ASes. Use make_edge to get the canonical
/// orientation (low endpoint first).
struct Edge {
  Asn a;
  Asn b;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(Asn x, Asn y) { return x <= y ? Edge{x, y} : Edge{y, x}; }

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << e.a << '-' << e.b;
}

}  // namespace astopo

template <>
struct std::hash<astopo::Asn> {
  std::size_t operator()(astopo::Asn asn) const noexcept {
    return std::hash<std::uint32_t>{}(asn.value);
  }
};

template <>
struct std::hash<astopo::Edge> {
  std::size_t operator()(const astopo::Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{e.a.value} << 32) | e.b.value);
  }
};
