#include <gtest/gtest.h>

#include <astopo/distance.hpp>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace astopo;
using testgen::e;

TEST(Distance, CompleteGraph) {
  auto st = distance_distribution(testgen::clique(4).build());
  EXPECT_EQ(st.histogram, (std::map<std::size_t, std::uint64_t>{{1, 6}}));
  EXPECT_EQ(st.mean, 1.0);
  EXPECT_EQ(st.width, 0.0);
}

TEST(Distance, PathOfFour) {
  auto st = distance_distribution(testgen::path(4).build());
  EXPECT_EQ(st.histogram, (std::map<std::size_t, std::uint64_t>{{1, 3}, {2, 2}, {3, 1}}));
  EXPECT_DOUBLE_EQ(st.mean, 5.0 / 3.0);
  EXPECT_EQ(st.pair_total, 6u);
}

TEST(Distance, DisconnectedRaises) {
  try {
    distance_distribution(build_from_edges({e(1, 2), e(3, 4)}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::disconnected);
  }
  EXPECT_THROW(distance_distribution(AsGraph::from_edges({}, {Asn{1}})), Error);
}

TEST(Distance, MatchesAllPairsOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto raw = testgen::connected_gnp(30, 0.05, seed);
    auto g = raw.build();
    auto dist = oracle::all_pairs(oracle::Dense(raw));
    std::map<std::size_t, std::uint64_t> hist;
    for (std::size_t i = 0; i < raw.n; ++i)
      for (std::size_t j = i + 1; j < raw.n; ++j) ++hist[static_cast<std::size_t>(dist[i][j])];
    auto st = distance_distribution(g);
    EXPECT_EQ(st.histogram, hist);
    EXPECT_EQ(st.pair_total, 30u * 29u / 2u);

    // Mean and spread recomputed from the histogram.
    long double s1 = 0, s2 = 0;
    for (const auto& [x, c] : hist) {
      s1 += static_cast<long double>(x) * c;
      s2 += static_cast<long double>(x) * x * c;
    }
    const long double total = st.pair_total;
    const long double mean = s1 / total;
    EXPECT_NEAR(st.mean, static_cast<double>(mean), 1e-12);
    EXPECT_NEAR(st.width, static_cast<double>(std::sqrt(s2 / total - mean * mean)), 1e-9);

    double psum = 0.0;
    for (const auto& [x, c] : hist) psum += st.probability(x);
    EXPECT_NEAR(psum, 1.0, 1e-12);
    for (auto [x, v] : st.expansion()) EXPECT_NEAR(v, st.probability(x) * 30.0, 1e-12);
  }
}

TEST(DistanceByDegree, Star) {
  auto d = avg_distance_by_degree(testgen::star(4).build());
  EXPECT_DOUBLE_EQ(d.at(4), 1.0);
  EXPECT_DOUBLE_EQ(d.at(1), 1.75);
}

TEST(DistanceByDegree, CompleteGraph) {
  EXPECT_DOUBLE_EQ(avg_distance_by_degree(testgen::clique(6).build()).at(5), 1.0);
}

TEST(DistanceByDegree, Cycle) {
  EXPECT_DOUBLE_EQ(avg_distance_by_degree(testgen::cycle(6).build()).at(2), 1.8);
}

TEST(DistanceByDegree, MatchesOracle) {
  auto raw = testgen::connected_gnp(35, 0.04, 12);
  auto g = raw.build();
  oracle::Dense dense(raw);
  auto dist = oracle::all_pairs(dense);
  std::map<std::size_t, std::pair<double, double>> acc;
  for (std::size_t i = 0; i < raw.n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < raw.n; ++j) sum += dist[i][j];
    auto& a = acc[dense.degree(i)];
    a.first += sum / static_cast<double>(raw.n - 1);
    a.second += 1.0;
  }
  auto d = avg_distance_by_degree(g);
  for (const auto& [k, a] : acc) EXPECT_NEAR(d.at(k), a.first / a.second, 1e-12);
}

TEST(Distance, WorkerCountDoesNotMatter) {
  auto g = testgen::barabasi_albert(600, 2, 3).build();
  auto one = distance_profile(g, 1);
  for (unsigned w : {2u, 5u}) {
    auto many = distance_profile(g, w);
    EXPECT_EQ(many.stats.histogram, one.stats.histogram);
    EXPECT_EQ(many.stats.mean, one.stats.mean);
    EXPECT_EQ(many.stats.width, one.stats.width);
    EXPECT_EQ(many.by_degree, one.by_degree);
  }
}
