#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "gensample/error.hpp"
#include "gensample/experiment.hpp"
#include "gensample/io.hpp"

using namespace gensample;

namespace {

std::vector<int> parse_order(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic sampling of Keisler measures on graphs and hypergraphs"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string modelFile, graphFile, contextFile, orderText, configFile;
  std::uint64_t mc = 0;
  int pushforward = 0;

  auto addOutputs = [&](CLI::App* sub) {
    sub->add_option("--json", cfg.json_out, "write the JSON report here");
    sub->add_option("--csv", cfg.csv_out, "write the CSV table here");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* density = app.add_subcommand("density", "exact or Monte Carlo density of a labeled graph");
  density->add_option("--model", modelFile, "model JSON")->required()->check(CLI::ExistingFile);
  density->add_option("--graph", graphFile, "graph JSON")->required()->check(CLI::ExistingFile);
  density->add_option("--mc", mc, "Monte Carlo samples (exact when omitted)");
  density->add_option("--seed", cfg.seed, "seed");
  addOutputs(density);

  auto* sample = app.add_subcommand("sample", "draw labeled graphs from the generic sampler");
  sample->add_option("--model", modelFile, "model JSON")->required()->check(CLI::ExistingFile);
  sample->add_option("-n", cfg.n, "vertices")->required()->check(CLI::PositiveNumber);
  sample->add_option("--count", cfg.samples, "number of graphs")->required();
  sample->add_option("--seed", cfg.seed, "seed");
  sample->add_option("--out", cfg.jsonl_out, "JSONL output (one graph per line)");
  addOutputs(sample);

  auto* morley = app.add_subcommand("morley", "Morley power of a formula");
  morley->add_option("--backend", cfg.backend, "albert | graphon | hypergraphon")
      ->check(CLI::IsMember({"albert", "graphon", "hypergraphon"}));
  morley->add_option("--model", modelFile, "model JSON")->required()->check(CLI::ExistingFile);
  morley->add_option("--formula", cfg.formula, "conjunction such as 'R(x1,x2)&!R(x2,mb)'");
  morley->add_option("--context", contextFile, "context JSON")->check(CLI::ExistingFile);
  morley->add_option("--order", orderText, "elimination order, first sampled first, e.g. 2,1,3");
  morley->add_option("--pushforward", pushforward, "tabulate the pushforward on [N] instead");
  addOutputs(morley);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "suite name or 'all'")->required();
  verify->add_option("--tol", cfg.tolerance, "tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "seed");
  addOutputs(verify);

  auto* demo = app.add_subcommand("demo", "run a demonstration");
  demo->add_option("--name", cfg.demo, "threshold | rado | noninvariance")
      ->required()
      ->check(CLI::IsMember({"threshold", "rado", "noninvariance"}));
  demo->add_option("--seed", cfg.seed, "seed");
  addOutputs(demo);

  auto* run = app.add_subcommand("run", "run an experiment config file");
  run->add_option("config", configFile, "config JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cfg = ExperimentConfig::from_json(read_json_file(configFile));
    } else {
      if (!modelFile.empty()) cfg.model = read_json_file(modelFile);
      if (density->parsed()) {
        cfg.graph = read_json_file(graphFile);
        cfg.mode = mc > 0 ? "mc" : "exact";
        cfg.samples = mc;
      } else if (sample->parsed()) {
        cfg.mode = "sample";
      } else if (morley->parsed()) {
        if (pushforward > 0) {
          cfg.mode = "exact";
          cfg.n = pushforward;
        } else {
          if (cfg.formula.empty()) throw Error("morley needs --formula or --pushforward");
          cfg.mode = "morley";
          if (!contextFile.empty()) cfg.context = read_json_file(contextFile);
          if (!orderText.empty()) cfg.order = parse_order(orderText);
        }
      } else if (verify->parsed()) {
        cfg.mode = "verify";
      } else {
        cfg.mode = "demo";
      }
    }
    const auto result = run_experiment(cfg);
    std::cout << result.report.dump(2) << "\n";
    return result.passed ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
