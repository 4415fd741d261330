#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gensample/error.hpp"
#include "gensample/stats.hpp"
#include "gensample/verify.hpp"

using namespace gensample;

namespace {

DistributionTable uniform_table(int n) {
  DistributionTable t{2, n, std::vector<double>(std::size_t{1} << binomial(n, 2), 0.0)};
  for (auto& p : t.probs) p = 1.0 / static_cast<double>(t.probs.size());
  return t;
}

// forbidden induced subgraphs P4, C4, 2K2 all have exactly four vertices
bool has_forbidden_four(const LabeledHypergraph& g) {
  bool adj[8][8] = {};
  for (const auto& e : g.edges) adj[e[0]][e[1]] = adj[e[1]][e[0]] = true;
  const int n = g.n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          const int q[4] = {a, b, c, d};
          int deg[4] = {0, 0, 0, 0}, edges = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (adj[q[i]][q[j]]) ++deg[i], ++deg[j], ++edges;
          std::sort(deg, deg + 4);
          const bool p4 = edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2;
          const bool c4 = edges == 4 && deg[0] == 2 && deg[3] == 2;
          const bool twoK2 = edges == 2 && deg[0] == 1 && deg[3] == 1;
          if (p4 || c4 || twoK2) return true;
        }
  return false;
}

}  // namespace

TEST(Compare, ExactCountsGiveZeroTv) {
  const auto t = uniform_table(3);
  EmpiricalCounts c{2, 3, std::vector<std::uint64_t>(8, 100)};
  const auto r = compare_distributions(t, c);
  EXPECT_EQ(r.tv, 0.0);
  EXPECT_EQ(r.chi_square, 0.0);
  EXPECT_EQ(r.dof, 7);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(Compare, AllMassOnOneGraph) {
  const auto t = uniform_table(3);
  EmpiricalCounts c{2, 3, std::vector<std::uint64_t>(8, 0)};
  c.counts[5] = 8;
  EXPECT_NEAR(compare_distributions(t, c).tv, 7.0 / 8.0, 1e-15);
}

TEST(Compare, SupportMismatchThrows) {
  EmpiricalCounts c{2, 4, std::vector<std::uint64_t>(64, 1)};
  EXPECT_THROW(compare_distributions(uniform_table(3), c), ModelError);
}

TEST(Compare, PoolsSmallExpectations) {
  DistributionTable t{2, 2, {0.999, 0.001}};
  EmpiricalCounts c{2, 2, {1000, 0}};
  const auto r = compare_distributions(t, c);
  EXPECT_EQ(r.bins, 1);
  EXPECT_EQ(r.dof, 0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Compare, ChiSquareCalibration) {
  const KeislerBackend b{StepGraphon::constant(0.5)};
  const auto t = pushforward_distribution(b, 3);
  int ok = 0;
  for (int s = 0; s < 100; ++s) ok += compare_distributions(t, sample_counts(b, 3, 100000, 1000 + s)).p_value > 0.001;
  EXPECT_GE(ok, 99);
}

TEST(Compare, TvShrinksAtRootNRate) {
  Rng rng = replica_stream(51, 0);
  const auto t = pushforward_distribution(random_kernel_backend(2, 3, rng), 4);
  std::vector<double> xs, ys;
  for (std::uint64_t N : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    double tv = 0.0;
    for (int s = 0; s < 8; ++s) tv += compare_distributions(t, resample_table(t, N, 7 * N + s)).tv;
    xs.push_back(std::log(static_cast<double>(N)));
    ys.push_back(std::log(tv / 8));
  }
  const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  const double slope = sxy / sxx;
  EXPECT_GE(slope, -0.6);
  EXPECT_LE(slope, -0.4);
}

TEST(SampleCounts, ThreadCountInvariant) {
  const KeislerBackend b{MixtureMeasure::beta(2, 2)};
  EXPECT_EQ(sample_counts(b, 4, 3000, 5, 1).counts, sample_counts(b, 4, 3000, 5, 3).counts);
}

TEST(Threshold, CompleteGraph) {
  const auto r = threshold_recognize(LabeledHypergraph::from_mask(2, 5, 1023));
  EXPECT_TRUE(r.is_threshold);
  EXPECT_EQ(r.creation.size(), 5u);
  EXPECT_EQ(r.creation.substr(1), "uuuu");
}

TEST(Threshold, PathOnFour) {
  const auto r = threshold_recognize(LabeledHypergraph(2, 4, {{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_FALSE(r.is_threshold);
  EXPECT_EQ(r.stuck, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Threshold, ForbiddenSubgraphCrossCheck) {
  for (int n = 1; n <= 7; ++n)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << binomial(n, 2)); ++m) {
      const auto g = LabeledHypergraph::from_mask(2, n, m);
      ASSERT_EQ(threshold_recognize(g).is_threshold, !has_forbidden_four(g)) << "n=" << n << " mask=" << m;
    }
}

TEST(Threshold, AlbertTwoPointSamples) {
  const auto nu = MixtureMeasure::two_point(0.3);
  for (int s = 0; s < 200; ++s) EXPECT_TRUE(threshold_recognize(albert_generic_sample(nu, 30, s)).is_threshold);
}

TEST(Extension, CompleteGraphMissesMixedDemands) {
  const auto k6 = LabeledHypergraph::from_mask(2, 6, (std::uint64_t{1} << 15) - 1);
  EXPECT_LT(extension_stats(k6, 2), 1.0);
}

TEST(Extension, CountsDemands) {
  // empty graph on 7 vertices: only all-B demands are witnessed (by vertex 7 or another probe vertex)
  const LabeledHypergraph empty(2, 7, {});
  // demands with |A|+|B| <= 1: 6 vertices x 2 sides; the 6 with A = {v} are unmet
  EXPECT_NEAR(extension_stats(empty, 1), 0.5, 1e-15);
  EXPECT_THROW(extension_stats(empty, 0), ModelError);
}

TEST(Extension, BetaSamplesSaturate) {
  const auto nu = MixtureMeasure::beta(2, 2);
  int full = 0;
  for (int s = 0; s < 20; ++s) full += extension_stats(albert_generic_sample(nu, 200, s), 3) == 1.0;
  EXPECT_GE(full, 19);
}
