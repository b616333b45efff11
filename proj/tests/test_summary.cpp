#include <gtest/gtest.h>

#include <astopo/run.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/generators.hpp"

using namespace astopo;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("astopo_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_file(const fs::path& p, const std::string& body) {
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

std::string k4_text() { return "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"; }

std::string graph_text(const testgen::RawGraph& raw) {
  std::ostringstream os;
  write_edge_list(os, raw.build());
  return os.str();
}

RunConfig config_for(const fs::path& input, const fs::path& out) {
  RunConfig cfg;
  cfg.inputs = {{input, InputFormat::adjacency}};
  cfg.out_dir = out;
  return cfg;
}

}  // namespace

TEST(Report, CompleteGraph) {
  auto r = compute_report(testgen::clique(4).build());
  const auto& s = r.summary;
  EXPECT_EQ(s.nodes, 4u);
  EXPECT_EQ(s.edges, 6u);
  EXPECT_EQ(s.avg_degree, 3.0);
  EXPECT_FALSE(s.assortativity.has_value());
  EXPECT_EQ(s.clustering_mean, 1.0);
  EXPECT_EQ(s.avg_distance, 1.0);
  ASSERT_EQ(s.top_eigenvalues.size(), 3u);
  EXPECT_NEAR(s.top_eigenvalues[0], 3.0, 1e-12);
  EXPECT_FALSE(s.gamma.has_value());
}

TEST(Report, DistanceOnGiantComponentOnly) {
  auto g = build_from_edges({testgen::e(1, 2), testgen::e(2, 3), testgen::e(1, 3), testgen::e(7, 8)});
  auto r = compute_report(g);
  EXPECT_EQ(r.summary.giant_component_nodes, 3u);
  EXPECT_EQ(r.summary.giant_component_excluded, 2u);
  EXPECT_EQ(r.summary.avg_distance, 1.0);
  EXPECT_EQ(r.summary.nodes, 5u);
}

TEST(Report, ScaleFreeGraphHasAcceptedDegreeExponent) {
  auto r = compute_report(testgen::barabasi_albert(1500, 2, 11).build());
  ASSERT_TRUE(r.summary.gamma.has_value());
  EXPECT_GT(*r.summary.gamma, 2.0);
  EXPECT_LT(*r.summary.gamma, 3.5);
  ASSERT_TRUE(r.summary.powerlaw_max_degree.has_value());
  EXPECT_TRUE(r.fits.count(fit_name::degree));
  ASSERT_TRUE(r.summary.assortativity.has_value());
  EXPECT_EQ(r.spectrum.count(), 150u);
}

TEST(Report, EmptyGraphRaises) { EXPECT_THROW(compute_report(AsGraph{}), Error); }

TEST(Report, TinyGraphsDoNotThrow) {
  EXPECT_NO_THROW(compute_report(AsGraph::from_edges({}, {Asn{5}})));
  EXPECT_NO_THROW(compute_report(build_from_edges({testgen::e(1, 2)})));
  EXPECT_NO_THROW(compute_report(AsGraph::from_edges({}, {Asn{5}, Asn{6}, Asn{7}})));
}

TEST(RunSummary, WritesManifestAndFiles) {
  TempDir tmp;
  auto input = write_file(tmp.path() / "k4.txt", k4_text());
  std::ostringstream log;
  auto r = run_summary(config_for(input, tmp.path() / "out"), log);
  EXPECT_EQ(r.summary.nodes, 4u);
  const auto manifest = slurp(tmp.path() / "out" / "manifest.txt");
  std::istringstream lines(manifest);
  std::string line;
  std::getline(lines, line);
  std::size_t listed = 0;
  while (std::getline(lines, line)) {
    const auto name = line.substr(0, line.find(' '));
    EXPECT_TRUE(fs::exists(tmp.path() / "out" / name)) << name;
    ++listed;
  }
  EXPECT_GE(listed, 15u);
  const auto summary = slurp(tmp.path() / "out" / "summary.txt");
  EXPECT_NE(summary.find("nodes 4\n"), std::string::npos);
  EXPECT_NE(summary.find("assortativity -\n"), std::string::npos);
  EXPECT_NE(summary.find("clustering_mean 1\n"), std::string::npos);
}

TEST(RunSummary, JsonRecord) {
  TempDir tmp;
  auto cfg = config_for(write_file(tmp.path() / "k4.txt", k4_text()), tmp.path() / "out");
  cfg.emit = EmitFormat::json;
  std::ostringstream log;
  run_summary(cfg, log);
  auto j = nlohmann::json::parse(slurp(tmp.path() / "out" / "summary.json"));
  EXPECT_EQ(j["summary"]["nodes"], 4);
  EXPECT_TRUE(j["summary"]["assortativity"].is_null());
  EXPECT_EQ(j["summary"]["avg_distance"], 1.0);
}

TEST(RunSummary, RepeatedRunsAreByteIdentical) {
  TempDir tmp;
  auto input = write_file(tmp.path() / "tri.txt", "1 2\n2 3\n1 3\n");
  std::ostringstream log;
  run_summary(config_for(input, tmp.path() / "a"), log);
  run_summary(config_for(input, tmp.path() / "b"), log);
  for (const auto& entry : fs::directory_iterator(tmp.path() / "a")) {
    EXPECT_EQ(slurp(entry.path()), slurp(tmp.path() / "b" / entry.path().filename())) << entry.path();
  }
}

TEST(RunSummary, WorkerCountDoesNotChangeOutput) {
  TempDir tmp;
  auto input = write_file(tmp.path() / "ba.txt", graph_text(testgen::barabasi_albert(400, 2, 3)));
  std::ostringstream log;
  auto one = config_for(input, tmp.path() / "w1");
  auto four = config_for(input, tmp.path() / "w4");
  four.summary.workers = 4;
  run_summary(one, log);
  run_summary(four, log);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path() / "w1")) {
    EXPECT_EQ(slurp(entry.path()), slurp(tmp.path() / "w4" / entry.path().filename())) << entry.path();
    ++files;
  }
  EXPECT_GE(files, 15u);
}

TEST(RunSummary, GiantComponentTrimIsLogged) {
  TempDir tmp;
  auto input = write_file(tmp.path() / "g.txt", "1 2\n2 3\n1 3\n7 8\n");
  std::ostringstream log;
  run_summary(config_for(input, tmp.path() / "out"), log);
  EXPECT_NE(log.str().find("exclude 2"), std::string::npos);
}

TEST(RunSummary, Errors) {
  TempDir tmp;
  std::ostringstream log;
  auto empty = write_file(tmp.path() / "empty.txt", "");
  try {
    run_summary(config_for(empty, tmp.path() / "out"), log);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::empty_graph);
  }
  try {
    run_summary(config_for(tmp.path() / "missing.txt", tmp.path() / "out"), log);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::io_error);
  }
  auto bad = write_file(tmp.path() / "bad.txt", "1 2\n3 x\n");
  try {
    run_summary(config_for(bad, tmp.path() / "out"), log);
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
    EXPECT_EQ(err.file(), bad.string());
    EXPECT_NE(std::string(err.what()).find("bad.txt"), std::string::npos);
  }
  RunConfig none;
  EXPECT_THROW(none.validate(), Error);
}

TEST(RunSummary, MergesSourcesOfMixedFormats) {
  TempDir tmp;
  RunConfig cfg;
  cfg.inputs = {{write_file(tmp.path() / "a.txt", "1 2\n"), InputFormat::adjacency},
                {write_file(tmp.path() / "p.txt", "2 3 3 4\n"), InputFormat::as_paths},
                {write_file(tmp.path() / "r.txt", "aut-num: AS4\nimport: from AS1 accept ANY\n\naut-num: AS1\n"),
                 InputFormat::rpsl}};
  cfg.out_dir = tmp.path() / "out";
  auto g = load_graph(cfg);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.has_edge(Asn{1}, Asn{4}));
}

TEST(RunCompare, SameFileTwice) {
  TempDir tmp;
  auto input = write_file(tmp.path() / "k4.txt", k4_text());
  std::ostringstream log;
  auto out = run_compare(config_for(input, tmp.path() / "cmp"), config_for(input, tmp.path() / "unused"), log);
  EXPECT_EQ(out.delta.nodes_only_a + out.delta.nodes_only_b + out.delta.edges_only_a + out.delta.edges_only_b, 0u);
  EXPECT_TRUE(out.complete());
  EXPECT_FALSE(out.exclusive_mean_a.has_value());
  ASSERT_TRUE(out.reduced_a.has_value());
  EXPECT_EQ(out.reduced_a->edges, 6u);
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "reduced_a" / "summary.txt"));
  EXPECT_FALSE(fs::exists(tmp.path() / "unused"));
}

TEST(RunCompare, TriangleVersusPath) {
  TempDir tmp;
  auto a = write_file(tmp.path() / "a.txt", "1 2\n2 3\n1 3\n");
  auto b = write_file(tmp.path() / "b.txt", "1 2\n2 3\n");
  std::ostringstream log;
  auto out = run_compare(config_for(a, tmp.path() / "cmp"), config_for(b, tmp.path() / "x"), log);
  EXPECT_EQ(out.delta.nodes_both, 3u);
  EXPECT_EQ(out.delta.edges_both, 2u);
  EXPECT_EQ(out.delta.edges_only_a, 1u);
  EXPECT_EQ(out.delta.edges_only_b, 0u);
  const auto delta = slurp(tmp.path() / "cmp" / "delta.txt");
  EXPECT_NE(delta.find("edges_only_a 1\n"), std::string::npos);
}

TEST(RunCompare, DisjointGraphsStillWriteDelta) {
  TempDir tmp;
  auto a = write_file(tmp.path() / "a.txt", "1 2\n");
  auto b = write_file(tmp.path() / "b.txt", "3 4\n5 6\n");
  std::ostringstream log;
  auto out = run_compare(config_for(a, tmp.path() / "cmp"), config_for(b, tmp.path() / "x"), log);
  EXPECT_FALSE(out.complete());
  EXPECT_EQ(out.delta.nodes_only_b, 4u);
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "delta.txt"));
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "manifest.txt"));
  EXPECT_FALSE(fs::exists(tmp.path() / "cmp" / "reduced_a"));
  EXPECT_NE(log.str().find("empty intersection"), std::string::npos);
  ASSERT_TRUE(out.exclusive_mean_a.has_value());
  EXPECT_EQ(*out.exclusive_mean_a, 1.0);
}

TEST(Format, SixSignificantDigits) {
  EXPECT_EQ(format_number(6.28906), "6.28906");
  EXPECT_EQ(format_number(2.0 * 28959 / 9204), "6.2927");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_optional(std::nullopt), "-");
}

TEST(Format, InputFormatNames) {
  EXPECT_EQ(parse_input_format("as-paths"), InputFormat::as_paths);
  EXPECT_EQ(parse_input_format("adjacency"), InputFormat::adjacency);
  EXPECT_EQ(parse_input_format("rpsl"), InputFormat::rpsl);
  EXPECT_THROW(parse_input_format("mrt"), Error);
  EXPECT_THROW(parse_emit_format("xml"), Error);
}
