#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "gensample/core.hpp"
#include "gensample/keisler.hpp"
#include "gensample/rng.hpp"

namespace gensample {

/// Shape of a random conjunction: variables x_first..x_{first+vars-1}, context params
/// c<ctx_offset+1>.., M-elements m<m_offset+1>... Every variable occurs in some literal.
struct FormulaShape {
  int k = 2;
  int first_var = 1;
  int vars = 3;
  int ctx_params = 0;
  int m_elems = 0;
  int ctx_offset = 0;
  int m_offset = 0;
  int max_literals = 6;
};

Conjunction random_formula(const FormulaShape& shape, Rng& rng);

/// Uniform flat cells for every small subset of params and fair-coin adjacency for each k-subset.
/// cells[t-1] is the cell count at arity t.
ParamContext random_context(int k, const TermSet& params, const std::vector<int>& cells, Rng& rng);

/// Random graphon (k = 2, up to maxCells cells) or hypergraphon (k >= 3, 1..maxCells cells per arity).
KeislerBackend random_kernel_backend(int k, int maxCells, Rng& rng);
std::vector<int> cell_counts(const KeislerBackend& backend);

struct VerifyReport {
  std::string suite;
  double tolerance = 0.0;
  bool passed = true;
  int checks = 0;
  double max_residual = 0.0;
  std::vector<std::string> failures;
  nlohmann::json details = nlohmann::json::object();

  /// One check against tol (the report's tolerance unless given).
  void record(double residual, double tol = -1.0);
  /// A pass/fail check with no residual.
  void require(bool ok, const std::string& what);
  nlohmann::json to_json() const;
};

/// Monte Carlo bounds, fixed for reproducibility.
inline constexpr double kGraphTvBound = 0.02;
inline constexpr double kHyperTvBound = 0.03;
inline constexpr std::uint64_t kTvSamples = 100000;

const std::vector<std::string>& verify_suites();
VerifyReport run_verify(const std::string& suite, double tol, std::uint64_t seed = 20261015);

}  // namespace gensample
