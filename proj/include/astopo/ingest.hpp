#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "astopo/asn.hpp"
#include "astopo/error.hpp"
#include "astopo/graph.hpp"

namespace astopo {

// ---------------------------------------------------------------------------
// Filter policy

struct AsnRange {
  Asn first;
  Asn last;  // inclusive

  bool contains(Asn asn) const { return first <= asn && asn <= last; }
  friend bool operator==(const AsnRange&, const AsnRange&) = default;
};

/// Rules applied while building graphs from raw data. The default private
/// block is 64512-65535 and ASN 0 is dropped.
struct FilterPolicy {
  std::vector<AsnRange> private_ranges{{Asn{64512}, Asn{65535}}};
  bool drop_as_sets = true;
  bool drop_asn_zero = true;

  /// Throws invalid_argument unless ranges are well formed, sorted and
  /// non-overlapping.
  void validate() const {
    for (std::size_t i = 0; i < private_ranges.size(); ++i) {
      const auto& r = private_ranges[i];
      if (r.last < r.first) {
        throw Error(Errc::invalid_argument, "range " + std::to_string(r.first.value) + "-" +
                                                std::to_string(r.last.value) + " is reversed");
      }
      if (i > 0 && private_ranges[i - 1].last >= r.first) {
        throw Error(Errc::invalid_argument, "private ranges overlap or are unsorted");
      }
    }
  }
};

inline bool is_filtered(const FilterPolicy& policy, Asn asn) {
  if (policy.drop_asn_zero && asn.value == 0) return true;
  auto it = std::upper_bound(policy.private_ranges.begin(), policy.private_ranges.end(), asn,
                             [](Asn a, const AsnRange& r) { return a < r.first; });
  return it != policy.private_ranges.begin() && std::prev(it)->contains(asn);
}

/// Parses "lo-hi[,lo-hi...]" (a single ASN is a one-element range). "none" or
/// an empty string yields no ranges. The result is sorted and validated.
inline std::vector<AsnRange> parse_range_list(std::string_view text) {
  std::vector<AsnRange> out;
  if (text.empty() || text == "none") return out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto dash = item.find('-');
    auto lo = parse_asn(item.substr(0, dash));
    auto hi = dash == std::string_view::npos ? lo : parse_asn(item.substr(dash + 1));
    if (!lo || !hi) throw Error(Errc::invalid_argument, "bad ASN range '" + std::string(item) + "'");
    out.push_back({*lo, *hi});
  }
  std::sort(out.begin(), out.end(), [](const AsnRange& x, const AsnRange& y) { return x.first < y.first; });
  FilterPolicy probe;
  probe.private_ranges = out;
  probe.validate();
  return out;
}

// ---------------------------------------------------------------------------
// AS paths

/// One element of an AS path: a single AS, or an AS-set whose internal
/// structure is unknown (sorted, distinct members).
struct AsSet {
  std::vector<Asn> members;
  friend bool operator==(const AsSet&, const AsSet&) = default;
};

using PathElement = std::variant<Asn, AsSet>;

struct AsPath {
  std::vector<PathElement> elements;
  friend bool operator==(const AsPath&, const AsPath&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_skippable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace detail

/// One AsPath per non-blank, non-'#' line. Tokens are decimal ASNs or
/// "{a,b,...}" AS-sets (whitespace inside the braces is tolerated).
/// Runs of the same single ASN (prepending) collapse to one element.
inline std::vector<AsPath> parse_as_paths(std::istream& in) {
  std::vector<AsPath> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    auto tokens = detail::split_ws(line);
    AsPath path;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      std::string_view tok = tokens[t];
      if (tok.front() == '{') {
        std::string joined(tok);
        while (joined.back() != '}' && t + 1 < tokens.size()) joined += tokens[++t];
        if (joined.back() != '}') throw ParseError(line_no, joined, "unterminated AS-set");
        std::string_view body(joined);
        body = body.substr(1, body.size() - 2);
        AsSet set;
        while (true) {
          auto comma = body.find(',');
          auto member = parse_asn(detail::trim(body.substr(0, comma)));
          if (!member) throw ParseError(line_no, joined, "bad AS-set member");
          set.members.push_back(*member);
          if (comma == std::string_view::npos) break;
          body = body.substr(comma + 1);
        }
        std::sort(set.members.begin(), set.members.end());
        set.members.erase(std::unique(set.members.begin(), set.members.end()), set.members.end());
        path.elements.emplace_back(std::move(set));
        continue;
      }
      auto asn = parse_asn(tok);
      if (!asn) throw ParseError(line_no, std::string(tok), "malformed ASN token");
      if (!path.elements.empty()) {
        if (auto* prev = std::get_if<Asn>(&path.elements.back()); prev && *prev == *asn) continue;
      }
      path.elements.emplace_back(*asn);
    }
    out.push_back(std::move(path));
  }
  return out;
}

inline std::vector<AsPath> parse_as_paths(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_as_paths(in);
}

/// Links every pair of adjacent single ASes. AS-sets and filtered ASNs split
/// the path: no edge ever bridges them and filtered ASNs never become nodes.
/// With drop_as_sets off, unfiltered AS-set members are kept as nodes but
/// still receive no links.
inline AsGraph paths_to_graph(const std::vector<AsPath>& paths, const FilterPolicy& policy) {
  std::vector<Edge> edges;
  std::vector<Asn> nodes;
  for (const auto& path : paths) {
    Asn prev{};
    bool linked = false;  // prev is set and adjacent to the next element
    for (const auto& element : path.elements) {
      if (const auto* set = std::get_if<AsSet>(&element)) {
        linked = false;
        if (!policy.drop_as_sets) {
          for (Asn m : set->members) {
            if (!is_filtered(policy, m)) nodes.push_back(m);
          }
        }
        continue;
      }
      Asn asn = std::get<Asn>(element);
      if (is_filtered(policy, asn)) {
        linked = false;
        continue;
      }
      nodes.push_back(asn);
      if (linked && prev != asn) edges.push_back(make_edge(prev, asn));
      prev = asn;
      linked = true;
    }
  }
  return AsGraph::from_edges(std::move(edges), std::move(nodes));
}

// ---------------------------------------------------------------------------
// Adjacency lists

/// Edge-list text: "a b" per line, '#' comments, blank lines ignored. A line
/// holding a single ASN declares a node (the canonical writer uses this for
/// isolated nodes). An edge with a filtered endpoint is dropped entirely.
inline AsGraph parse_adjacency(std::istream& in, const FilterPolicy& policy) {
  std::vector<Edge> edges;
  std::vector<Asn> nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() > 2) throw ParseError(line_no, std::string(detail::trim(line)), "expected two ASNs");
    std::optional<Asn> ends[2];
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      ends[t] = parse_asn(tokens[t]);
      if (!ends[t]) throw ParseError(line_no, std::string(tokens[t]), "malformed ASN");
    }
    if (tokens.size() == 1) {
      if (!is_filtered(policy, *ends[0])) nodes.push_back(*ends[0]);
      continue;
    }
    if (*ends[0] == *ends[1]) throw ParseError(line_no, std::string(detail::trim(line)), "self-loop");
    bool drop0 = is_filtered(policy, *ends[0]);
    bool drop1 = is_filtered(policy, *ends[1]);
    if (drop0 || drop1) {
      if (!drop0) nodes.push_back(*ends[0]);
      if (!drop1) nodes.push_back(*ends[1]);
      continue;
    }
    edges.push_back(make_edge(*ends[0], *ends[1]));
  }
  return AsGraph::from_edges(std::move(edges), std::move(nodes));
}

inline AsGraph parse_adjacency(std::string_view text, const FilterPolicy& policy) {
  std::istringstream in{std::string(text)};
  return parse_adjacency(in, policy);
}

// ---------------------------------------------------------------------------
// RPSL (WHOIS) records

struct RpslRecord {
  Asn aut_num;
  std::vector<Asn> imports;
  std::vector<Asn> exports;
  friend bool operator==(const RpslRecord&, const RpslRecord&) = default;
};

namespace detail {

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

/// "AS<digits>" (case-insensitive prefix) to Asn.
inline std::optional<Asn> parse_as_token(std::string_view tok) {
  if (tok.size() < 3 || !iequals(tok.substr(0, 2), "as")) return std::nullopt;
  return parse_asn(tok.substr(2));
}

inline std::optional<Asn> peer_after(std::string_view value, std::string_view keyword) {
  auto tokens = split_ws(value);
  auto it = std::find_if(tokens.begin(), tokens.end(), [&](std::string_view t) { return iequals(t, keyword); });
  if (it == tokens.end()) return std::nullopt;
  for (++it; it != tokens.end(); ++it) {
    if (auto asn = parse_as_token(*it)) return asn;
  }
  return std::nullopt;
}

}  // namespace detail

/// Blank-line separated attribute blocks. From each block we keep aut-num and,
/// for every import/export attribute, the first AS<digits> token after the
/// "from"/"to" keyword. Comment lines ('%' or '#') and continuation lines
/// (leading whitespace or '+') are skipped; blocks without aut-num are dropped.
inline std::vector<RpslRecord> parse_rpsl(std::istream& in) {
  std::vector<RpslRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t block = 0;
  bool in_block = false;
  std::optional<Asn> aut_num;
  RpslRecord current;

  auto flush = [&] {
    if (in_block) {
      if (aut_num) {
        current.aut_num = *aut_num;
        out.push_back(std::move(current));
      }
      ++block;
    }
    in_block = false;
    aut_num.reset();
    current = RpslRecord{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) {
      flush();
      continue;
    }
    char first = line.front();
    if (first == '%' || first == '#') continue;
    in_block = true;
    if (first == ' ' || first == '\t' || first == '+') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string_view key = detail::trim(std::string_view(line).substr(0, colon));
    std::string_view value = detail::trim(std::string_view(line).substr(colon + 1));
    if (detail::iequals(key, "aut-num")) {
      auto asn = detail::parse_as_token(value);
      if (!asn) throw ParseError(line_no, std::string(value), "aut-num in record " + std::to_string(block) + " is not AS<digits>", block);
      aut_num = asn;
    } else if (detail::iequals(key, "import")) {
      if (auto peer = detail::peer_after(value, "from")) current.imports.push_back(*peer);
    } else if (detail::iequals(key, "export")) {
      if (auto peer = detail::peer_after(value, "to")) current.exports.push_back(*peer);
    }
  }
  flush();
  return out;
}

inline std::vector<RpslRecord> parse_rpsl(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_rpsl(in);
}

/// Nodes are the registered (aut-num) ASes that survive filtering; a link
/// a-b exists when a's record names b in an import or export and b is also
/// registered.
inline AsGraph rpsl_to_graph(const std::vector<RpslRecord>& records, const FilterPolicy& policy) {
  std::unordered_set<Asn> registered;
  for (const auto& r : records) {
    if (!is_filtered(policy, r.aut_num)) registered.insert(r.aut_num);
  }
  std::vector<Edge> edges;
  for (const auto& r : records) {
    if (!registered.contains(r.aut_num)) continue;
    for (const auto* peers : {&r.imports, &r.exports}) {
      for (Asn peer : *peers) {
        if (peer != r.aut_num && registered.contains(peer)) edges.push_back(make_edge(r.aut_num, peer));
      }
    }
  }
  return AsGraph::from_edges(std::move(edges), {registered.begin(), registered.end()});
}

}  // namespace astopo
