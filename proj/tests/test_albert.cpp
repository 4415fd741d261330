#include <gtest/gtest.h>

#include <cmath>

#include "gensample/albert.hpp"
#include "gensample/error.hpp"

using namespace gensample;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(Mixture, LebesgueMomentsAreBetaFunctions) {
  const auto leb = MixtureMeasure::lebesgue();
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      EXPECT_NEAR(leb.moment(a, b), factorial(a) * factorial(b) / factorial(a + b + 1), 1e-14);
}

TEST(Mixture, TwoPointMoments) {
  const auto nu = MixtureMeasure::two_point(0.3);
  EXPECT_NEAR(nu.moment(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(nu.moment(3, 0), 0.3, 1e-15);
  EXPECT_NEAR(nu.moment(0, 2), 0.7, 1e-15);
  EXPECT_EQ(nu.moment(1, 1), 0.0);
}

TEST(Mixture, BetaTwoTwo) {
  const auto nu = MixtureMeasure::beta(2, 2);
  EXPECT_NEAR(nu.moment(1, 0), 0.5, 1e-14);
  EXPECT_NEAR(nu.moment(2, 0), 0.3, 1e-14);
}

TEST(Mixture, Validates) {
  EXPECT_THROW(MixtureMeasure({{0.5, 0.4}}, {}), ModelError);
  EXPECT_THROW(MixtureMeasure({{1.5, 1.0}}, {}), ModelError);
  EXPECT_THROW(MixtureMeasure({}, {{-1.0, 1.0, 1.0}}), ModelError);
}

TEST(Mixture, SampleMean) {
  const auto nu = MixtureMeasure({{0.9, 0.5}}, {{2.0, 5.0, 0.5}});
  Rng rng = replica_stream(3, 0);
  double s = 0.0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) s += nu.sample(rng);
  EXPECT_NEAR(s / N, 0.45 + 0.5 * 2.0 / 7.0, 0.005);
}

TEST(MuNu, Evaluations) {
  const auto leb = MixtureMeasure::lebesgue();
  EXPECT_NEAR(mu_nu_eval(leb, {"mb", "mc"}, {}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu_nu_eval(leb, {"mb"}, {"mc"}), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(mu_nu_eval(leb, {"mb"}, {"mb"}), 0.0);
  EXPECT_NEAR(mu_nu_eval(leb, {"mb", "mb"}, {}), 0.5, 1e-15);
}

TEST(AlbertMorley, TwoPointValues) {
  const auto nu = MixtureMeasure::two_point(0.3);
  const std::vector<int> asc{1, 2, 3};
  EXPECT_NEAR(albert_morley(nu, parse_formula("R(x3,x2)&R(x2,x1)", 2), asc), 0.09, 1e-12);
  EXPECT_NEAR(albert_morley(nu, parse_formula("R(x3,x2)&R(x3,x1)", 2), asc), 0.3, 1e-12);
}

TEST(AlbertMorley, LebesgueOrderDependence) {
  const auto leb = MixtureMeasure::lebesgue();
  const auto psi = parse_formula("R(x1,x2)&R(x1,mb)&!R(x2,mc)", 2);
  EXPECT_NEAR(albert_morley(leb, psi, std::vector<int>{2, 1}), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(albert_morley(leb, psi, std::vector<int>{1, 2}), 1.0 / 12.0, 1e-12);
}

TEST(AlbertMorley, RejectsBadOrders) {
  const auto nu = MixtureMeasure::lebesgue();
  const auto phi = parse_formula("R(x1,x2)", 2);
  EXPECT_THROW(albert_morley(nu, phi, std::vector<int>{1}), ModelError);
  EXPECT_THROW(albert_morley(nu, phi, std::vector<int>{1, 3}), ModelError);
}

TEST(AlbertSampling, PrefixProperty) {
  const auto nu = MixtureMeasure::beta(2, 2);
  const auto big = albert_generic_sample(nu, 40, 17);
  const auto small = albert_generic_sample(nu, 10, 17);
  for (const auto& e : small.edges) EXPECT_TRUE(big.has_edge(e));
  for (const auto& e : big.edges)
    if (e[1] <= 10) EXPECT_TRUE(small.has_edge(e));
}

TEST(AlbertSampling, EdgeProbabilityIsMean) {
  const auto nu = MixtureMeasure::two_point(0.3);
  int hits = 0;
  const int N = 40000;
  for (int s = 0; s < N; ++s) hits += !albert_generic_sample(nu, 2, s).edges.empty();
  EXPECT_NEAR(hits / double(N), 0.3, 4 * std::sqrt(0.21 / N));
}
