#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "astopo/compare.hpp"
#include "astopo/error.hpp"
#include "astopo/summary.hpp"

namespace astopo {

enum class EmitFormat { text, json };

inline EmitFormat parse_emit_format(std::string_view s) {
  if (s == "text") return EmitFormat::text;
  if (s == "json") return EmitFormat::json;
  throw Error(Errc::invalid_argument, "unknown emit format '" + std::string(s) + "' (text|json)");
}

/// Six significant digits, the precision of every emitted scalar.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

namespace detail {

inline nlohmann::ordered_json json_number(double v) { return std::stod(format_number(v)); }

inline nlohmann::ordered_json json_optional(const std::optional<double>& v) {
  return v ? json_number(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

struct ManifestEntry {
  std::string file;
  std::string operation;
  std::string kind;  // "data" (numeric columns) or "record"
};

/// Output directory of one run. Files are written in call order and listed in
/// manifest.txt by write_manifest().
class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
      throw Error(Errc::io_error, "cannot create output directory " + dir_.string());
    }
  }

  const std::filesystem::path& path() const noexcept { return dir_; }
  const std::vector<ManifestEntry>& entries() const noexcept { return entries_; }

  void write(const std::string& name, const std::string& operation, const std::string& kind, const std::string& body) {
    put(name, body);
    entries_.push_back({name, operation, kind});
  }

  /// Records a nested run directory in this manifest.
  void add_subdirectory(const std::string& name, const std::string& operation) {
    entries_.push_back({name + "/", operation, "directory"});
  }

  void write_manifest() {
    std::ostringstream os;
    os << "# file operation kind\n";
    for (const auto& e : entries_) os << e.file << ' ' << e.operation << ' ' << e.kind << '\n';
    put("manifest.txt", os.str());
  }

 private:
  void put(const std::string& name, const std::string& body) const {
    const auto p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << body;
    out.close();
    if (!out) throw Error(Errc::io_error, "cannot write " + p.string());
  }

  std::filesystem::path dir_;
  std::vector<ManifestEntry> entries_;
};

/// Labeled summary fields in table order; absent values render as "-".
inline std::vector<std::pair<std::string, std::string>> summary_fields(const MetricSummary& s) {
  std::vector<std::pair<std::string, std::string>> f{
      {"nodes", std::to_string(s.nodes)},
      {"edges", std::to_string(s.edges)},
      {"avg_degree", format_number(s.avg_degree)},
      {"max_degree", std::to_string(s.max_degree)},
      {"powerlaw_max_degree", format_optional(s.powerlaw_max_degree)},
      {"gamma", format_optional(s.gamma)},
      {"avg_neighbor_degree_normalized", format_optional(s.avg_neighbor_degree_normalized)},
      {"gamma_nn", format_optional(s.gamma_nn)},
      {"assortativity", format_optional(s.assortativity)},
      {"clustering_mean", format_optional(s.clustering_mean)},
      {"clustering_coeff", format_optional(s.clustering_coeff)},
      {"gamma_c", format_optional(s.gamma_c)},
      {"gamma_rc", format_optional(s.gamma_rc)},
      {"avg_distance", format_optional(s.avg_distance)},
      {"distance_stddev", format_optional(s.distance_stddev)},
      {"gamma_d", format_optional(s.gamma_d)},
      {"avg_node_betweenness_normalized", format_optional(s.avg_node_betweenness_normalized)},
      {"gamma_b", format_optional(s.gamma_b)},
      {"avg_edge_betweenness_normalized", format_optional(s.avg_edge_betweenness_normalized)},
  };
  for (std::size_t i = 0; i < 3; ++i) {
    f.emplace_back("eigenvalue_" + std::to_string(i + 1),
                   i < s.top_eigenvalues.size() ? format_number(s.top_eigenvalues[i]) : "-");
  }
  f.emplace_back("giant_component_nodes", std::to_string(s.giant_component_nodes));
  f.emplace_back("giant_component_excluded", std::to_string(s.giant_component_excluded));
  return f;
}

inline std::string summary_text(const MetricSummary& s) {
  std::string out;
  for (const auto& [k, v] : summary_fields(s)) out += k + ' ' + v + '\n';
  return out;
}

inline nlohmann::ordered_json summary_json(const MetricSummary& s) {
  using detail::json_number;
  using detail::json_optional;
  nlohmann::ordered_json j;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["avg_degree"] = json_number(s.avg_degree);
  j["max_degree"] = s.max_degree;
  j["powerlaw_max_degree"] = json_optional(s.powerlaw_max_degree);
  j["gamma"] = json_optional(s.gamma);
  j["avg_neighbor_degree_normalized"] = json_optional(s.avg_neighbor_degree_normalized);
  j["gamma_nn"] = json_optional(s.gamma_nn);
  j["assortativity"] = json_optional(s.assortativity);
  j["clustering_mean"] = json_optional(s.clustering_mean);
  j["clustering_coeff"] = json_optional(s.clustering_coeff);
  j["gamma_c"] = json_optional(s.gamma_c);
  j["gamma_rc"] = json_optional(s.gamma_rc);
  j["avg_distance"] = json_optional(s.avg_distance);
  j["distance_stddev"] = json_optional(s.distance_stddev);
  j["gamma_d"] = json_optional(s.gamma_d);
  j["avg_node_betweenness_normalized"] = json_optional(s.avg_node_betweenness_normalized);
  j["gamma_b"] = json_optional(s.gamma_b);
  j["avg_edge_betweenness_normalized"] = json_optional(s.avg_edge_betweenness_normalized);
  auto eig = nlohmann::ordered_json::array();
  for (double v : s.top_eigenvalues) eig.push_back(json_number(v));
  j["top_eigenvalues"] = eig;
  j["giant_component_nodes"] = s.giant_component_nodes;
  j["giant_component_excluded"] = s.giant_component_excluded;
  return j;
}

inline std::string fit_text(const std::string& name, const PowerLawFit& f) {
  return name + " exponent " + format_number(f.exponent) + " prefactor " + format_number(f.prefactor) + " r2 " +
         format_optional(f.r_squared) + " range " + format_number(f.range.lo) + ":" + format_number(f.range.hi) +
         " points " + std::to_string(f.points_used) + " distinct " + std::to_string(f.distinct_x) + " accepted " +
         (f.accepted ? "yes" : "no") + '\n';
}

inline nlohmann::ordered_json fit_json(const PowerLawFit& f) {
  nlohmann::ordered_json j;
  j["exponent"] = detail::json_number(f.exponent);
  j["prefactor"] = detail::json_number(f.prefactor);
  j["r_squared"] = detail::json_optional(f.r_squared);
  j["range"] = {detail::json_number(f.range.lo), detail::json_number(f.range.hi)};
  j["points"] = f.points_used;
  j["distinct_x"] = f.distinct_x;
  j["accepted"] = f.accepted;
  return j;
}

inline std::string delta_text(const GraphDelta& d) {
  std::ostringstream os;
  os << "nodes_both " << d.nodes_both << "\nnodes_only_a " << d.nodes_only_a << "\nnodes_only_b " << d.nodes_only_b
     << "\nedges_both " << d.edges_both << "\nedges_only_a " << d.edges_only_a << "\nedges_only_b " << d.edges_only_b
     << '\n';
  return os.str();
}

inline nlohmann::ordered_json delta_json(const GraphDelta& d) {
  nlohmann::ordered_json j;
  j["nodes_both"] = d.nodes_both;
  j["nodes_only_a"] = d.nodes_only_a;
  j["nodes_only_b"] = d.nodes_only_b;
  j["edges_both"] = d.edges_both;
  j["edges_only_a"] = d.edges_only_a;
  j["edges_only_b"] = d.edges_only_b;
  return j;
}

namespace detail {

class Table {
 public:
  explicit Table(std::string header) : os_("# " + header + "\n", std::ios::ate) {}

  template <class... T>
  void row(T... cols) {
    bool first = true;
    ((os_ << (first ? "" : " ") << cell(cols), first = false), ...);
    os_ << '\n';
  }

  std::string str() const { return os_.str(); }

 private:
  template <class V>
  static std::string cell(V v) {
    if constexpr (std::is_floating_point_v<V>) {
      return format_number(static_cast<double>(v));
    } else {
      return std::to_string(v);
    }
  }

  std::ostringstream os_;
};

}  // namespace detail

inline std::string degree_table(const DegreeDistribution& d) {
  detail::Table t("k P(k)");
  for (auto [k, p] : d.pdf_points()) t.row(k, p);
  return t.str();
}

/// Writes the summary record, the fit record and one data file per metric.
inline void emit_report(const MetricReport& r, RunDirectory& dir, EmitFormat emit) {
  using detail::Table;
  if (emit == EmitFormat::json) {
    nlohmann::ordered_json j;
    j["summary"] = summary_json(r.summary);
    nlohmann::ordered_json fits = nlohmann::ordered_json::object();
    for (const auto& [name, f] : r.fits) fits[name] = fit_json(f);
    j["fits"] = fits;
    dir.write("summary.json", "summary", "record", j.dump(2) + '\n');
  } else {
    dir.write("summary.txt", "summary", "record", summary_text(r.summary));
    std::string fits;
    for (const auto& [name, f] : r.fits) fits += fit_text(name, f);
    dir.write("fits.txt", "fit_power_law", "record", fits);
  }

  dir.write("degree_pdf.txt", "degree_distribution", "data", degree_table(r.degrees));
  {
    Table t("k P(K>=k)");
    for (auto [k, p] : r.degrees.ccdf_points()) t.row(k, p);
    dir.write("degree_ccdf.txt", "degree_distribution", "data", t.str());
  }
  {
    Table t("k1 k2 P(k1,k2)");
    if (r.jdd) {
      for (const auto& [pair, count] : r.jdd->edge_counts) t.row(pair.low, pair.high, r.jdd->probability(pair.low, pair.high));
    }
    dir.write("jdd.txt", "jdd", "data", t.str());
  }
  {
    Table raw("k knn(k)"), norm("k knn(k)/(n-1)");
    for (const auto& [k, v] : r.knn.knn) raw.row(k, v);
    for (const auto& [k, v] : r.knn.knn_normalized) norm.row(k, v);
    dir.write("knn.txt", "avg_neighbor_degree", "data", raw.str());
    dir.write("knn_normalized.txt", "avg_neighbor_degree", "data", norm.str());
  }
  {
    Table t("k C(k)");
    for (const auto& [k, v] : r.clustering) t.row(k, v);
    dir.write("clustering.txt", "local_clustering", "data", t.str());
  }
  {
    Table t("rho/n phi");
    for (const auto& p : r.rich_club) t.row(p.fraction, p.phi);
    dir.write("rich_club.txt", "rich_club", "data", t.str());
  }
  {
    Table dist("x pairs d(x)"), exp("x n*d(x)"), by_k("k d(k)");
    if (r.distance) {
      const auto& st = r.distance->stats;
      for (const auto& [x, c] : st.histogram) dist.row(x, c, st.probability(x));
      for (auto [x, v] : st.expansion()) exp.row(x, v);
      for (const auto& [k, v] : r.distance->by_degree) by_k.row(k, v);
    }
    dir.write("distance.txt", "distance_distribution", "data", dist.str());
    dir.write("expansion.txt", "distance_distribution", "data", exp.str());
    dir.write("distance_by_degree.txt", "avg_distance_by_degree", "data", by_k.str());
  }
  {
    Table node("k B(k)/(n(n-1))"), edge("k1 k2 B(k1,k2)/(n(n-1))");
    for (const auto& [k, v] : r.betweenness_by_degree) node.row(k, v);
    for (const auto& [pair, v] : r.edge_betweenness_by_degrees) edge.row(pair.low, pair.high, v);
    dir.write("betweenness_by_degree.txt", "node_betweenness", "data", node.str());
    dir.write("edge_betweenness_by_degrees.txt", "edge_betweenness", "data", edge.str());
  }
  {
    Table mag("rank/n |lambda|"), signed_values("rank lambda");
    const double n = static_cast<double>(r.summary.nodes);
    for (std::size_t i = 0; i < r.spectrum.count(); ++i) {
      const double v = r.spectrum.eigenvalues[i];
      mag.row(static_cast<double>(i + 1) / n, v < 0 ? -v : v);
      signed_values.row(i + 1, v);
    }
    dir.write("spectrum.txt", "spectrum_top", "data", mag.str());
    dir.write("eigenvalues.txt", "spectrum_top", "data", signed_values.str());
  }
}

}  // namespace astopo
