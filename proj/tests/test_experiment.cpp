#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gensample/error.hpp"
#include "gensample/experiment.hpp"
#include "gensample/io.hpp"

using namespace gensample;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json two_block_json() {
  return {{"backend", "graphon"}, {"model", {{"weights", {0.5, 0.5}}, {"values", {{1.0, 0.0}, {0.0, 1.0}}}}}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gensample_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Io, GraphonRoundTrip) {
  const auto b = backend_from_json(two_block_json());
  EXPECT_EQ(b.kind(), "graphon");
  EXPECT_EQ(to_json(backend_from_json(to_json(b))), to_json(b));
}

TEST(Io, HypergraphonRoundTrip) {
  Rng rng = replica_stream(61, 0);
  const auto h = random_step_hypergraphon(3, {2, 1}, rng);
  const auto back = hypergraphon_from_json(to_json(h));
  ASSERT_EQ(back.table_size(), h.table_size());
  for (std::size_t i = 0; i < h.table_size(); ++i) EXPECT_EQ(back.value_at(i), h.value_at(i));
}

TEST(Io, MixtureAndContext) {
  const auto nu = mixture_from_json(json{{"atoms", {{{"t", 1.0}, {"w", 0.3}}, {{"t", 0.0}, {"w", 0.7}}}}});
  EXPECT_NEAR(nu.moment(1, 0), 0.3, 1e-15);
  const auto ctx = context_from_json(json{{"params", {"c1", "c2"}}, {"flat", {{"c1", 1}, {"c2", 0}}},
                                          {"adj", {{"c1,c2", true}}}},
                                     2);
  EXPECT_EQ(ctx.flat_cell({Term::ctx("c1")}), 1);
  EXPECT_TRUE(ctx.adjacent(make_term_set({Term::ctx("c2"), Term::ctx("c1")})));
  EXPECT_THROW(context_from_json(json{{"flat", {{"mb", 0}}}}, 2), ModelError);
}

TEST(Io, RejectsMalformedModels) {
  EXPECT_THROW(backend_from_json(json{{"backend", "nope"}, {"model", json::object()}}), ModelError);
  EXPECT_THROW(backend_from_json(json{{"weights", {1.0}}}), ModelError);
  EXPECT_THROW(graphon_from_json(json{{"weights", {0.5, 0.5}}, {"values", {{1.0, 0.0}}}}), ModelError);
}

TEST(Experiment, SampleModeIsReproducible) {
  ExperimentConfig c;
  c.mode = "sample";
  c.model = json{{"backend", "graphon"}, {"model", {{"weights", {1.0}}, {"values", {{0.5}}}}}};
  c.n = 4;
  c.samples = 3;
  c.seed = 7;
  c.jsonl_out = scratch("a.jsonl").string();
  const auto r1 = run_experiment(c);
  const auto first = slurp(c.jsonl_out);
  c.threads = 3;
  c.jsonl_out = scratch("b.jsonl").string();
  run_experiment(c);
  EXPECT_EQ(r1.jsonl.size(), 3u);
  EXPECT_EQ(first, slurp(c.jsonl_out));
  EXPECT_FALSE(first.empty());
}

TEST(Experiment, DensityCsvRow) {
  ExperimentConfig c;
  c.mode = "exact";
  c.model = two_block_json();
  c.graph = json{{"k", 2}, {"n", 3}, {"edges", {{1, 2}, {1, 3}, {2, 3}}}};
  c.csv_out = scratch("density.csv").string();
  const auto r = run_experiment(c);
  EXPECT_EQ(slurp(c.csv_out), "quantity,value\ndensity,0.25\n");
  EXPECT_EQ(r.report["density"].get<double>(), 0.25);
}

TEST(Experiment, McOutputsIgnoreThreadCount) {
  ExperimentConfig c;
  c.mode = "mc";
  c.model = two_block_json();
  c.n = 3;
  c.samples = 20000;
  c.seed = 3;
  c.json_out = scratch("mc1.json").string();
  c.csv_out = scratch("mc1.csv").string();
  run_experiment(c);
  c.threads = 4;
  c.json_out = scratch("mc4.json").string();
  c.csv_out = scratch("mc4.csv").string();
  run_experiment(c);
  EXPECT_EQ(slurp(scratch("mc1.json")), slurp(scratch("mc4.json")));
  EXPECT_EQ(slurp(scratch("mc1.csv")), slurp(scratch("mc4.csv")));
}

TEST(Experiment, NoninvarianceDemo) {
  ExperimentConfig c;
  c.mode = "demo";
  c.demo = "noninvariance";
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.report["order_2_1"].get<double>(), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(r.report["order_1_2"].get<double>(), 1.0 / 12.0, 1e-12);
}

TEST(Experiment, MorleyWithContextAndOrder) {
  ExperimentConfig c = ExperimentConfig::from_json(json{{"mode", "morley"},
                                                        {"backend", "albert"},
                                                        {"model", {{"betas", {{{"alpha", 1}, {"beta", 1}, {"w", 1}}}}}},
                                                        {"formula", "R(x1,x2)&R(x1,mb)&!R(x2,mc)"},
                                                        {"order", {1, 2}}});
  EXPECT_NEAR(run_experiment(c).report["value"].get<double>(), 1.0 / 12.0, 1e-12);
}

TEST(Experiment, ValidatesConfig) {
  EXPECT_THROW(ExperimentConfig::from_json(json{{"mode", "mc"}, {"samples", 0}}), ModelError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"mode", "exact"}, {"tolerance", 0.0}}), ModelError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"mode", "bogus"}}), ModelError);
  ExperimentConfig c;
  c.mode = "exact";
  EXPECT_THROW(run_experiment(c), ModelError);
}

TEST(Experiment, VerifyModeReportsSuites) {
  ExperimentConfig c;
  c.mode = "verify";
  c.suite = "sumprod";
  c.tolerance = 1e-12;
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.report["suites"][0]["checks"].get<int>(), 100);
}
