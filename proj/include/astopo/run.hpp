#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "astopo/compare.hpp"
#include "astopo/error.hpp"
#include "astopo/graph.hpp"
#include "astopo/ingest.hpp"
#include "astopo/report.hpp"
#include "astopo/summary.hpp"

namespace astopo {

enum class InputFormat { as_paths, adjacency, rpsl };

inline InputFormat parse_input_format(std::string_view s) {
  if (s == "as-paths" || s == "paths") return InputFormat::as_paths;
  if (s == "adjacency" || s == "adj") return InputFormat::adjacency;
  if (s == "rpsl") return InputFormat::rpsl;
  throw Error(Errc::invalid_argument, "unknown input format '" + std::string(s) + "' (as-paths|adjacency|rpsl)");
}

inline const char* format_name(InputFormat f) {
  switch (f) {
    case InputFormat::as_paths: return "as-paths";
    case InputFormat::adjacency: return "adjacency";
    case InputFormat::rpsl: return "rpsl";
  }
  return "?";
}

struct InputSource {
  std::filesystem::path path;
  InputFormat format = InputFormat::adjacency;
};

struct RunConfig {
  std::vector<InputSource> inputs;
  FilterPolicy filter;
  std::filesystem::path out_dir;
  SummaryOptions summary;
  EmitFormat emit = EmitFormat::text;

  void validate() const {
    if (inputs.empty()) throw Error(Errc::invalid_argument, "no input files");
    filter.validate();
    if (summary.workers == 0) throw Error(Errc::invalid_argument, "worker count must be positive");
    if (summary.eig_count && *summary.eig_count == 0) throw Error(Errc::invalid_argument, "eigenvalue count must be positive");
    if (!(summary.fit_threshold >= 0.0 && summary.fit_threshold <= 1.0)) {
      throw Error(Errc::invalid_argument, "fit threshold must lie in [0, 1]");
    }
  }
};

/// Parses one input file. Parse errors are re-raised with the file name.
inline AsGraph load_input(const InputSource& src, const FilterPolicy& policy) {
  std::ifstream in(src.path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + src.path.string());
  try {
    switch (src.format) {
      case InputFormat::as_paths: return paths_to_graph(parse_as_paths(in), policy);
      case InputFormat::adjacency: return parse_adjacency(in, policy);
      case InputFormat::rpsl: return rpsl_to_graph(parse_rpsl(in), policy);
    }
  } catch (const ParseError& e) {
    throw e.in_file(src.path.string());
  }
  throw Error(Errc::invalid_argument, "unknown input format");
}

/// Union of every input of the configuration.
inline AsGraph load_graph(const std::vector<InputSource>& inputs, const FilterPolicy& policy) {
  std::vector<AsGraph> parts;
  parts.reserve(inputs.size());
  for (const auto& src : inputs) parts.push_back(load_input(src, policy));
  return parts.size() == 1 ? std::move(parts.front()) : merge(parts);
}

inline AsGraph load_graph(const RunConfig& cfg) { return load_graph(cfg.inputs, cfg.filter); }

/// Computes the report of g and writes it into dir.
inline MetricReport summarize_into(const AsGraph& g, RunDirectory& dir, const RunConfig& cfg, std::ostream& log) {
  MetricReport r = compute_report(g, cfg.summary);
  if (r.summary.giant_component_excluded > 0) {
    log << "giant component keeps " << r.summary.giant_component_nodes << " of " << r.summary.nodes
        << " nodes; distance metrics exclude " << r.summary.giant_component_excluded << '\n';
  }
  emit_report(r, dir, cfg.emit);
  return r;
}

/// Builds the graph, computes every metric and writes the run directory.
inline MetricReport run_summary(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const AsGraph g = load_graph(cfg);
  if (g.empty()) throw Error(Errc::empty_graph, "inputs contain no AS after filtering");
  RunDirectory dir(cfg.out_dir);
  MetricReport r = summarize_into(g, dir, cfg, log);
  dir.write_manifest();
  return r;
}

struct CompareOutcome {
  GraphDelta delta;
  std::optional<double> exclusive_mean_a;
  std::optional<double> exclusive_mean_b;
  std::optional<MetricSummary> reduced_a;
  std::optional<MetricSummary> reduced_b;
  std::vector<std::string> failures;  // steps that could not run; the delta is always written

  bool complete() const { return failures.empty(); }
};

/// Compares the graphs of a and b. Output options (out_dir, emit, summary
/// settings) are taken from a.
inline CompareOutcome run_compare(const RunConfig& a, const RunConfig& b, std::ostream& log) {
  a.validate();
  b.validate();
  const AsGraph ga = load_graph(a);
  const AsGraph gb = load_graph(b);
  RunDirectory dir(a.out_dir);
  CompareOutcome out;
  out.delta = graph_delta(ga, gb);

  auto exclusive = [&](const AsGraph& x, const AsGraph& y, const char* name) -> std::optional<double> {
    DegreeDistribution d;
    std::optional<double> mean;
    try {
      d = exclusive_degree_distribution(x, y);
      mean = d.mean();
    } catch (const Error& e) {
      if (e.code() != Errc::empty_set) throw;
    }
    dir.write(std::string(name) + ".txt", "exclusive_degree_distribution", "data", degree_table(d));
    return mean;
  };
  out.exclusive_mean_a = exclusive(ga, gb, "exclusive_a");
  out.exclusive_mean_b = exclusive(gb, ga, "exclusive_b");

  if (a.emit == EmitFormat::json) {
    auto j = delta_json(out.delta);
    j["exclusive_mean_a"] = detail::json_optional(out.exclusive_mean_a);
    j["exclusive_mean_b"] = detail::json_optional(out.exclusive_mean_b);
    dir.write("delta.json", "graph_delta", "record", j.dump(2) + '\n');
  } else {
    dir.write("delta.txt", "graph_delta", "record",
              delta_text(out.delta) + "exclusive_mean_a " + format_optional(out.exclusive_mean_a) +
                  "\nexclusive_mean_b " + format_optional(out.exclusive_mean_b) + '\n');
  }

  try {
    auto [ra, rb] = reduced_pair(ga, gb);
    for (auto [graph, name, slot] : {std::tuple{&ra, "reduced_a", &out.reduced_a}, std::tuple{&rb, "reduced_b", &out.reduced_b}}) {
      RunDirectory sub(dir.path() / name);
      *slot = summarize_into(*graph, sub, a, log).summary;
      sub.write_manifest();
      dir.add_subdirectory(name, "reduced_pair");
    }
  } catch (const Error& e) {
    if (e.code() != Errc::empty_intersection) throw;
    log << "reduced pair skipped: " << e.what() << '\n';
    out.failures.emplace_back(e.what());
  }
  dir.write_manifest();
  return out;
}

}  // namespace astopo
