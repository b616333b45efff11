#include <gtest/gtest.h>

#include <astopo/degree.hpp>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace astopo;

TEST(AverageDegree, Triangle) { EXPECT_DOUBLE_EQ(average_degree(testgen::clique(3).build()), 2.0); }

TEST(AverageDegree, EqualsTwiceEdgesOverNodes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testgen::gnp(30, 0.15, seed).build();
    EXPECT_EQ(average_degree(g), 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count()));
  }
}

TEST(AverageDegree, EmptyGraphRaises) { EXPECT_THROW(average_degree(AsGraph{}), Error); }

TEST(DegreeDistribution, Star) {
  auto d = degree_distribution(testgen::star(4).build());
  EXPECT_EQ(d.count(1), 4u);
  EXPECT_EQ(d.count(4), 1u);
  EXPECT_EQ(d.count(2), 0u);
  EXPECT_EQ(d.k_max, 4u);
  EXPECT_DOUBLE_EQ(d.pdf(1), 0.8);
}

TEST(DegreeDistribution, TriangleCcdf) {
  auto d = degree_distribution(testgen::clique(3).build());
  EXPECT_EQ(d.count(2), 3u);
  EXPECT_DOUBLE_EQ(d.ccdf(2), 1.0);
  EXPECT_DOUBLE_EQ(d.ccdf(3), 0.0);
}

TEST(DegreeDistribution, MatchesTallyOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto raw = testgen::gnp(30, 0.2, seed);
    auto d = degree_distribution(raw.build());
    auto expected = oracle::degree_tally(oracle::Dense(raw));
    std::size_t k_max = 0;
    for (const auto& [k, c] : expected) {
      EXPECT_EQ(d.count(k), c);
      k_max = std::max(k_max, k);
    }
    EXPECT_EQ(d.k_max, k_max);
    double pdf_sum = 0.0, mean = 0.0;
    for (auto [k, p] : d.pdf_points()) {
      pdf_sum += p;
      mean += static_cast<double>(k) * p;
    }
    EXPECT_NEAR(pdf_sum, 1.0, 1e-12);
    EXPECT_NEAR(mean, average_degree(raw.build()), 1e-9);
    EXPECT_NEAR(d.mean(), average_degree(raw.build()), 1e-12);
  }
}

TEST(DegreeDistribution, CcdfIsMonotone) {
  auto d = degree_distribution(testgen::barabasi_albert(300, 2, 5).build());
  double prev = 1.0;
  for (auto [k, p] : d.ccdf_points()) {
    EXPECT_LE(p, prev);
    EXPECT_GT(p, 0.0);
    prev = p;
  }
  EXPECT_DOUBLE_EQ(d.ccdf(0), 1.0);
}

TEST(PowerLawMaxDegree, GammaTwoGivesN) {
  EXPECT_NEAR(power_law_max_degree(1234.0, 2.0), 1234.0, 1e-9);
}

TEST(PowerLawMaxDegree, RejectsGammaAtMostOne) {
  EXPECT_THROW(power_law_max_degree(100.0, 1.0), Error);
  EXPECT_THROW(power_law_max_degree(100.0, 0.5), Error);
}

TEST(PowerLawMaxDegree, MatchesClosedForm) {
  EXPECT_NEAR(power_law_max_degree(17446.0, 2.16), std::pow(17446.0, 1.0 / 1.16), 1e-9);
}
