#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace gensample {

/// One reproducible run. Modes:
///   exact   density of `graph`, or the pushforward table on [n]
///   mc      Monte Carlo density of `graph`, or sampled table on [n] compared with the exact one
///   sample  `samples` graphs on [n]
///   morley  Morley power of `formula` under `context` and `order`
///   verify  a verification suite ("all" runs every suite)
///   demo    threshold | rado | noninvariance
struct ExperimentConfig {
  std::string mode = "exact";
  nlohmann::json model;    // inline model, wrapped or bare
  std::string backend;     // optional kind hint for a bare model
  nlohmann::json graph;    // {"k","n","edges"} or null
  std::string formula;
  std::vector<int> order;  // empty = ascending
  nlohmann::json context;  // null = no parameters
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  unsigned threads = 1;
  std::string suite;
  std::string demo;
  std::string json_out;
  std::string csv_out;
  std::string jsonl_out;

  /// "model_file" is read relative to the working directory when "model" is absent.
  static ExperimentConfig from_json(const nlohmann::json& j);
  void validate() const;
};

struct ExperimentResult {
  bool passed = true;
  nlohmann::json report;
  std::string csv;
  std::vector<std::string> jsonl;
};

/// Runs the config and writes whichever of json_out / csv_out / jsonl_out are set.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace gensample
