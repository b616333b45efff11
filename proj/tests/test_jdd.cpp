#include <gtest/gtest.h>

#include <astopo/degree.hpp>
#include <astopo/jdd.hpp>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace astopo;

namespace {

// Degree distribution over nodes of degree >= 1, the part a JDD can see.
std::map<std::size_t, double> positive_degree_pdf(const AsGraph& g) {
  std::map<std::size_t, double> out;
  std::size_t n = 0;
  for (AsGraph::Index i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) continue;
    out[g.degree(i)] += 1.0;
    ++n;
  }
  for (auto& [k, v] : out) v /= static_cast<double>(n);
  return out;
}

}  // namespace

TEST(Jdd, StarOnFourNodes) {
  auto j = jdd(testgen::star(3).build());
  ASSERT_EQ(j.edge_counts.size(), 1u);
  EXPECT_EQ(j.edges(1, 3), 3u);
  EXPECT_EQ(j.edges(3, 1), 3u);
  EXPECT_DOUBLE_EQ(j.probability(1, 3), 1.0);
}

TEST(Jdd, TriangleNormalizes) {
  auto j = jdd(testgen::clique(3).build());
  EXPECT_EQ(j.edges(2, 2), 3u);
  EXPECT_DOUBLE_EQ(j.probability(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(j.joint(2, 2), 1.0);
}

TEST(Jdd, PathOnFourNodes) {
  auto j = jdd(testgen::path(4).build());
  EXPECT_EQ(j.edges(1, 2), 2u);
  EXPECT_EQ(j.edges(2, 2), 1u);
  EXPECT_EQ(j.edge_counts.size(), 2u);
}

TEST(Jdd, NoEdgesRaises) { EXPECT_THROW(jdd(AsGraph::from_edges({}, {Asn{1}})), Error); }

TEST(Jdd, NormalizationAndMarginalIdentity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = testgen::gnp(40, 0.1, seed).build();
    if (g.edge_count() == 0) continue;
    auto j = jdd(g);
    std::uint64_t total = 0;
    double prob = 0.0, ordered = 0.0;
    for (const auto& [pair, c] : j.edge_counts) {
      total += c;
      prob += j.probability(pair.low, pair.high);
      ordered += j.joint(pair.low, pair.high) * (pair.low == pair.high ? 1.0 : 2.0);
    }
    EXPECT_EQ(total, g.edge_count());
    EXPECT_NEAR(prob, 1.0, 1e-12);
    EXPECT_NEAR(ordered, 1.0, 1e-12);

    auto pdf = positive_degree_pdf(g);
    auto restored = j.recovered_degree_distribution();
    ASSERT_EQ(restored.size(), pdf.size());
    for (const auto& [k, p] : pdf) EXPECT_NEAR(restored.at(k), p, 1e-9);
    double kbar = 0.0;
    for (const auto& [k, p] : pdf) kbar += static_cast<double>(k) * p;
    EXPECT_NEAR(j.recovered_average_degree(), kbar, 1e-9);
  }
}

TEST(Jdd, RecoversFullDistributionWithoutIsolatedNodes) {
  auto g = testgen::barabasi_albert(500, 3, 2).build();
  auto j = jdd(g);
  auto d = degree_distribution(g);
  EXPECT_NEAR(j.recovered_average_degree(), average_degree(g), 1e-9);
  for (const auto& [k, p] : j.recovered_degree_distribution()) EXPECT_NEAR(p, d.pdf(k), 1e-9);
}

TEST(Conditional, Star) {
  auto g = testgen::star(3).build();
  auto c = conditional_degree(jdd(g), degree_distribution(g));
  EXPECT_DOUBLE_EQ(c.at({1, 3}), 1.0);
  EXPECT_DOUBLE_EQ(c.at({3, 1}), 1.0);
}

TEST(Conditional, Triangle) {
  auto g = testgen::clique(3).build();
  auto c = conditional_degree(jdd(g), degree_distribution(g));
  EXPECT_DOUBLE_EQ(c.at({2, 2}), 1.0);
}

TEST(Conditional, PathMatchesNeighborCensus) {
  auto g = testgen::path(4).build();
  auto c = conditional_degree(jdd(g), degree_distribution(g));
  EXPECT_NEAR(c.at({1, 2}), 1.0, 1e-12);
  EXPECT_NEAR(c.at({2, 1}), 0.5, 1e-12);
  EXPECT_NEAR(c.at({2, 2}), 0.5, 1e-12);
}

TEST(Conditional, RowsSumToOne) {
  auto g = testgen::barabasi_albert(300, 2, 9).build();
  auto c = conditional_degree(jdd(g), degree_distribution(g));
  std::map<std::size_t, double> rows;
  for (const auto& [key, p] : c) rows[key.first] += p;
  for (const auto& [k, s] : rows) EXPECT_NEAR(s, 1.0, 1e-9) << "k=" << k;
}

TEST(Conditional, MismatchedInputsRaise) {
  auto a = testgen::star(3).build();
  auto b = testgen::path(4).build();
  try {
    conditional_degree(jdd(a), degree_distribution(b));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::inconsistent_input);
  }
}

TEST(Knn, FullMesh) {
  auto p = avg_neighbor_degree(testgen::clique(5).build());
  EXPECT_DOUBLE_EQ(p.knn.at(4), 4.0);
  EXPECT_DOUBLE_EQ(p.knn_normalized.at(4), 1.0);
}

TEST(Knn, Star) {
  auto p = avg_neighbor_degree(testgen::star(4).build());
  EXPECT_DOUBLE_EQ(p.knn.at(1), 4.0);
  EXPECT_DOUBLE_EQ(p.knn.at(4), 1.0);
}

TEST(Knn, MatchesEndpointAveragingOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto raw = testgen::gnp(25, 0.25, seed);
    auto p = avg_neighbor_degree(raw.build());
    auto expected = oracle::knn(oracle::Dense(raw));
    ASSERT_EQ(p.knn.size(), expected.size());
    for (const auto& [k, v] : expected) EXPECT_NEAR(p.knn.at(k), v, 1e-12);
  }
}

TEST(Knn, ConditionalRouteAgrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testgen::connected_gnp(40, 0.08, seed).build();
    auto direct = avg_neighbor_degree(g).knn;
    auto via = knn_from_conditional(conditional_degree(jdd(g), degree_distribution(g)));
    ASSERT_EQ(direct.size(), via.size());
    for (const auto& [k, v] : direct) EXPECT_NEAR(via.at(k), v, 1e-9);
  }
}

TEST(Assortativity, StarIsMinusOne) {
  for (std::uint32_t leaves = 2; leaves < 12; ++leaves) {
    EXPECT_NEAR(assortativity(testgen::star(leaves).build()), -1.0, 1e-12);
  }
}

TEST(Assortativity, RegularGraphUndefined) {
  for (auto raw : {testgen::clique(4), testgen::cycle(7)}) {
    try {
      assortativity(raw.build());
      FAIL();
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), Errc::undefined_metric);
    }
  }
}

TEST(Assortativity, MatchesPearsonOracle) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    auto raw = testgen::gnp(20, 0.2, seed);
    auto g = raw.build();
    double r;
    try {
      r = assortativity(g);
    } catch (const Error&) {
      continue;
    }
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(r, oracle::pearson_assortativity(oracle::Dense(raw)), 1e-9);
    ++checked;
  }
}

TEST(Assortativity, PreferentialAttachmentIsDisassortative) {
  EXPECT_LT(assortativity(testgen::barabasi_albert(2000, 2, 1).build()), 0.0);
}
