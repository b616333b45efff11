// astopo: build AS-level graphs from routing data and compute topology metrics.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "astopo/astopo.hpp"

namespace {

using namespace astopo;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_partial = 3;

struct CommonArgs {
  std::vector<std::string> inputs;
  std::string format = "adjacency";
  std::string filter_private = "64512-65535";
  bool keep_as_sets = false;
  std::size_t eigs = 0;
  double fit_threshold = 0.9;
  std::vector<std::string> fit_ranges;
  unsigned workers = 1;
  std::string out;
  std::string emit = "text";
};

void add_filter_options(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--filter-private", a.filter_private, "Private ASN ranges to drop: lo-hi[,lo-hi...] or none")
      ->capture_default_str();
  cmd->add_flag("--keep-as-sets", a.keep_as_sets, "Keep AS-set members as isolated nodes instead of dropping them");
}

void add_metric_options(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--eigs", a.eigs, "Number of eigenvalues (default: 10% of n)");
  cmd->add_option("--fit-threshold", a.fit_threshold, "Minimum r^2 to accept a power-law fit")->capture_default_str();
  cmd->add_option("--fit-range", a.fit_ranges, "Fit window NAME=LO:HI (degree, knn, clustering, rich_club, distance, betweenness)");
  cmd->add_option("--workers", a.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

FilterPolicy make_policy(const CommonArgs& a) {
  FilterPolicy p;
  p.private_ranges = parse_range_list(a.filter_private);
  p.drop_as_sets = !a.keep_as_sets;
  p.validate();
  return p;
}

std::vector<InputSource> make_sources(const std::vector<std::string>& paths, const std::string& format) {
  const InputFormat f = parse_input_format(format);
  std::vector<InputSource> out;
  for (const auto& p : paths) out.push_back({p, f});
  return out;
}

RunConfig make_config(const CommonArgs& a, const std::vector<std::string>& inputs, const std::string& format) {
  RunConfig cfg;
  cfg.inputs = make_sources(inputs, format);
  cfg.filter = make_policy(a);
  cfg.out_dir = a.out;
  cfg.emit = parse_emit_format(a.emit);
  cfg.summary.workers = a.workers;
  cfg.summary.fit_threshold = a.fit_threshold;
  if (a.eigs > 0) cfg.summary.eig_count = a.eigs;
  for (const auto& spec : a.fit_ranges) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error(Errc::invalid_argument, "fit range must be NAME=LO:HI");
    cfg.summary.fit_ranges[spec.substr(0, eq)] = parse_fit_range(spec.substr(eq + 1));
  }
  return cfg;
}

void print_record(const std::string& text) { std::cout << text << std::flush; }

int cmd_build(const CommonArgs& a) {
  const AsGraph g = load_graph(make_sources(a.inputs, a.format), make_policy(a));
  if (a.out.empty()) {
    write_edge_list(std::cout, g);
  } else {
    std::ostringstream os;
    write_edge_list(os, g);
    RunDirectory dir(a.out);
    dir.write("graph.txt", "build", "data", os.str());
    dir.write_manifest();
  }
  std::cerr << "nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  return exit_ok;
}

int cmd_summary(const CommonArgs& a) {
  RunConfig cfg = make_config(a, a.inputs, a.format);
  const MetricReport r = run_summary(cfg, std::cerr);
  if (cfg.emit == EmitFormat::json) {
    print_record(summary_json(r.summary).dump(2) + '\n');
  } else {
    print_record(summary_text(r.summary));
  }
  return exit_ok;
}

int cmd_compare(const CommonArgs& a, const std::vector<std::string>& in_a, const std::vector<std::string>& in_b,
                const std::string& fmt_a, const std::string& fmt_b) {
  RunConfig ca = make_config(a, in_a, fmt_a.empty() ? a.format : fmt_a);
  RunConfig cb = make_config(a, in_b, fmt_b.empty() ? a.format : fmt_b);
  const CompareOutcome out = run_compare(ca, cb, std::cerr);
  if (ca.emit == EmitFormat::json) {
    print_record(delta_json(out.delta).dump(2) + '\n');
  } else {
    print_record(delta_text(out.delta));
  }
  return out.complete() ? exit_ok : exit_partial;
}

struct FitArgs {
  std::string file;
  std::size_t x_col = 1;
  std::size_t y_col = 2;
  std::string range;
  double threshold = 0.9;
  std::string emit = "text";
};

int cmd_fit(const FitArgs& f) {
  std::ifstream in(f.file, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + f.file);
  std::vector<FitPoint> points;
  std::size_t skipped = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> cols;
    for (std::string tok; ls >> tok;) cols.push_back(tok);
    if (cols.empty() || cols.front().front() == '#') continue;
    if (cols.size() < std::max(f.x_col, f.y_col)) throw ParseError(line_no, line, "missing column", std::nullopt, f.file);
    double xy[2];
    for (int c = 0; c < 2; ++c) {
      const std::string& tok = cols[(c == 0 ? f.x_col : f.y_col) - 1];
      try {
        std::size_t used = 0;
        xy[c] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw ParseError(line_no, tok, "not a number", std::nullopt, f.file);
      }
    }
    if (xy[0] > 0.0 && xy[1] > 0.0) {
      points.push_back({xy[0], xy[1]});
    } else {
      ++skipped;
    }
  }
  FitOptions opts;
  opts.threshold = f.threshold;
  if (!f.range.empty()) opts.range = parse_fit_range(f.range);
  const PowerLawFit fit = fit_power_law(points, opts);
  if (skipped > 0) std::cerr << "skipped " << skipped << " non-positive points\n";
  if (parse_emit_format(f.emit) == EmitFormat::json) {
    auto j = fit_json(fit);
    j["skipped"] = skipped;
    print_record(j.dump(2) + '\n');
  } else {
    print_record(fit_text("fit", fit));
  }
  return exit_ok;
}

int cmd_spectrum(const CommonArgs& a) {
  const AsGraph g = load_graph(make_sources(a.inputs, a.format), make_policy(a));
  if (g.empty()) throw Error(Errc::empty_graph, "inputs contain no AS after filtering");
  const std::size_t k = a.eigs > 0 ? a.eigs : default_eigen_count(g.node_count());
  const SpectrumResult r = spectrum_top(g, k);
  if (parse_emit_format(a.emit) == EmitFormat::json) {
    auto arr = nlohmann::ordered_json::array();
    for (double v : r.eigenvalues) arr.push_back(detail::json_number(v));
    nlohmann::ordered_json j;
    j["nodes"] = g.node_count();
    j["eigenvalues"] = arr;
    print_record(j.dump(2) + '\n');
  } else {
    std::string out = "# rank lambda\n";
    for (std::size_t i = 0; i < r.count(); ++i) out += std::to_string(i + 1) + ' ' + format_number(r.eigenvalues[i]) + '\n';
    print_record(out);
  }
  return exit_ok;
}

void report_error(const Error& e, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    j["error"] = errc_name(e.code());
    j["message"] = e.what();
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
      if (!pe->file().empty()) j["file"] = pe->file();
      j["line"] = pe->line();
    }
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << "astopo: " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AS-level topology reconstruction and metrics"};
  app.require_subcommand(1);

  CommonArgs common;
  std::vector<std::string> in_a, in_b;
  std::string fmt_a, fmt_b;
  FitArgs fit;

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("inputs", common.inputs, "Input files")->required()->check(CLI::ExistingFile);
    cmd->add_option("--format", common.format, "as-paths | adjacency | rpsl")->capture_default_str();
  };
  auto add_emit = [&](CLI::App* cmd, std::string& emit) {
    cmd->add_option("--emit", emit, "Record format: text | json")->capture_default_str();
  };

  auto* build = app.add_subcommand("build", "Parse inputs and print the merged graph as a canonical edge list");
  add_inputs(build);
  add_filter_options(build, common);
  build->add_option("--out", common.out, "Write graph.txt into this directory instead of stdout");

  auto* summary = app.add_subcommand("summary", "Compute the full metric suite and write per-metric data files");
  add_inputs(summary);
  add_filter_options(summary, common);
  add_metric_options(summary, common);
  summary->add_option("--out", common.out, "Output directory")->required();
  add_emit(summary, common.emit);

  auto* compare = app.add_subcommand("compare", "Compare two sources: overlap counts, exclusive nodes, reduced graphs");
  compare->add_option("-a,--input-a", in_a, "Inputs of the first source")->required()->check(CLI::ExistingFile);
  compare->add_option("-b,--input-b", in_b, "Inputs of the second source")->required()->check(CLI::ExistingFile);
  compare->add_option("--format", common.format, "Format of both sources")->capture_default_str();
  compare->add_option("--format-a", fmt_a, "Format of the first source");
  compare->add_option("--format-b", fmt_b, "Format of the second source");
  add_filter_options(compare, common);
  add_metric_options(compare, common);
  compare->add_option("--out", common.out, "Output directory")->required();
  add_emit(compare, common.emit);

  auto* fitcmd = app.add_subcommand("fit", "Fit a power law to two numeric columns of a data file");
  fitcmd->add_option("file", fit.file, "Data file ('#' lines are comments)")->required()->check(CLI::ExistingFile);
  fitcmd->add_option("--x-col", fit.x_col, "1-based x column")->capture_default_str()->check(CLI::PositiveNumber);
  fitcmd->add_option("--y-col", fit.y_col, "1-based y column")->capture_default_str()->check(CLI::PositiveNumber);
  fitcmd->add_option("--range", fit.range, "Inclusive x window LO:HI");
  fitcmd->add_option("--fit-threshold", fit.threshold, "Minimum r^2 to accept")->capture_default_str();
  add_emit(fitcmd, fit.emit);

  auto* spectrum = app.add_subcommand("spectrum", "Print the largest-magnitude adjacency eigenvalues");
  add_inputs(spectrum);
  add_filter_options(spectrum, common);
  spectrum->add_option("--eigs", common.eigs, "Number of eigenvalues (default: 10% of n)");
  add_emit(spectrum, common.emit);

  CLI11_PARSE(app, argc, argv);

  const bool json = (fitcmd->parsed() ? fit.emit : common.emit) == "json";
  try {
    if (build->parsed()) return cmd_build(common);
    if (summary->parsed()) return cmd_summary(common);
    if (compare->parsed()) return cmd_compare(common, in_a, in_b, fmt_a, fmt_b);
    if (fitcmd->parsed()) return cmd_fit(fit);
    if (spectrum->parsed()) return cmd_spectrum(common);
  } catch (const Error& e) {
    report_error(e, json);
    return exit_error;
  } catch (const std::exception& e) {
    std::cerr << "astopo: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
