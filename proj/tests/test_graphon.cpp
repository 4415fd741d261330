#include <gtest/gtest.h>

#include <cmath>

#include "gensample/error.hpp"
#include "gensample/graphon.hpp"

using namespace gensample;

namespace {

// independent oracle: recursive sum over cell assignments
double density_oracle(const StepGraphon& w, const LabeledHypergraph& h, std::vector<int>& cells, int v) {
  if (v == h.n) {
    double p = 1.0;
    for (int i = 0; i < h.n; ++i) p *= w.weights()[cells[i]];
    for (int i = 0; i < h.n; ++i)
      for (int j = i + 1; j < h.n; ++j) {
        const std::vector<int> e{i + 1, j + 1};
        const double q = w(cells[i], cells[j]);
        p *= h.has_edge(e) ? q : 1.0 - q;
      }
    return p;
  }
  double s = 0.0;
  for (int c = 0; c < w.cells(); ++c) {
    cells[v] = c;
    s += density_oracle(w, h, cells, v + 1);
  }
  return s;
}

StepGraphon two_block_diagonal() {
  Eigen::Vector2d w(0.5, 0.5);
  Eigen::Matrix2d v;
  v << 1, 0, 0, 1;
  return StepGraphon(w, v);
}

}  // namespace

TEST(StepGraphon, Validates) {
  Eigen::Vector2d w(0.5, 0.5);
  Eigen::Matrix2d asym;
  asym << 0.1, 0.2, 0.3, 0.4;
  EXPECT_THROW(StepGraphon(w, asym), ModelError);
  Eigen::Matrix2d ok;
  ok << 0.1, 0.2, 0.2, 0.4;
  EXPECT_THROW(StepGraphon(Eigen::Vector2d(0.5, 0.6), ok), ModelError);
  EXPECT_THROW(StepGraphon(Eigen::Vector2d(-0.5, 1.5), ok), ModelError);
  Eigen::Matrix2d big;
  big << 1.2, 0.2, 0.2, 0.4;
  EXPECT_THROW(StepGraphon(w, big), ModelError);
  EXPECT_NO_THROW(StepGraphon(w, ok));
}

TEST(Density, ConstantKernel) {
  const auto w = StepGraphon::constant(0.3);
  const LabeledHypergraph h(2, 4, {{1, 2}, {2, 3}});
  EXPECT_NEAR(density_exact(w, h), 0.09 * std::pow(0.7, 4), 1e-15);
}

TEST(Density, TwoBlockTriangle) {
  const LabeledHypergraph tri(2, 3, {{1, 2}, {1, 3}, {2, 3}});
  EXPECT_NEAR(density_exact(two_block_diagonal(), tri), 0.25, 1e-15);
}

TEST(Density, MatchesOracleAndNormalizes) {
  Rng rng = replica_stream(11, 0);
  for (int t = 0; t < 6; ++t) {
    const auto w = random_step_graphon(1 + t % 4, rng);
    double total = 0.0;
    for (std::uint64_t m = 0; m < 64; ++m) {
      const auto h = LabeledHypergraph::from_mask(2, 4, m);
      std::vector<int> cells(4);
      const double d = density_exact(w, h);
      EXPECT_NEAR(d, density_oracle(w, h, cells, 0), 1e-14);
      total += d;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Density, MonteCarloWithinFourSigma) {
  Rng rng = replica_stream(12, 0);
  const auto w = random_step_graphon(3, rng);
  const LabeledHypergraph h(2, 3, {{1, 2}});
  const auto e = density_mc(w, h, 200000, 5);
  EXPECT_NEAR(e.estimate, density_exact(w, h), 4 * e.std_error + 1e-12);
  EXPECT_EQ(e.samples, 200000u);
}

TEST(Density, MonteCarloIgnoresThreadCount) {
  const auto w = two_block_diagonal();
  const LabeledHypergraph h(2, 3, {{1, 2}});
  const auto a = density_mc(w, h, 5000, 9, 1);
  const auto b = density_mc(w, h, 5000, 9, 4);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.estimate, b.estimate);
}

TEST(Sampling, SeedReproducible) {
  const auto w = StepGraphon::constant(0.5);
  EXPECT_EQ(sample_graph(w, 8, 3), sample_graph(w, 8, 3));
  EXPECT_NE(sample_graph(w, 8, 3), sample_graph(w, 8, 4));
}

TEST(Sampling, EdgeFrequencyMatchesKernel) {
  const auto w = two_block_diagonal();
  // P(edge) = 1/2 for the diagonal two-block kernel
  int hits = 0;
  const int runs = 40000;
  for (int s = 0; s < runs; ++s) {
    Rng rng = replica_stream(77, s);
    hits += sample_graph_edges(w, 2, rng)[0];
  }
  EXPECT_NEAR(hits / double(runs), 0.5, 4 * std::sqrt(0.25 / runs));
}
