#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gensample/core.hpp"
#include "gensample/keisler.hpp"
#include "gensample/morley.hpp"

namespace gensample {

/// Observed counts per edge mask, same indexing as DistributionTable.
struct EmpiricalCounts {
  int k = 2;
  int n = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

/// Draws `samples` graphs on [n] from the backend's generic sampler (see for_each_sample).
EmpiricalCounts sample_counts(const KeislerBackend& backend, int n, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads = 1);

/// Categorical draws straight from a table.
EmpiricalCounts resample_table(const DistributionTable& table, std::uint64_t samples, std::uint64_t seed);

struct ComparisonReport {
  double tv = 0.0;
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::uint64_t samples = 0;
  int bins = 0;
  std::vector<double> residuals;  // empirical minus exact, per mask
};

/// Total variation plus a Pearson test; masks with expected count below 5 are pooled.
ComparisonReport compare_distributions(const DistributionTable& table, const EmpiricalCounts& counts);

struct ThresholdResult {
  bool is_threshold = false;
  /// Creation sequence, first vertex first: 'i' isolated, 'u' dominating.
  std::string creation;
  /// Vertices left when no isolated or dominating vertex remains (empty when threshold).
  std::vector<int> stuck;
};

ThresholdResult threshold_recognize(const LabeledHypergraph& g);

inline constexpr int kExtensionProbeSize = 6;

/// Fraction of extension demands (A, B) over the first min(n, 6) vertices, A and B disjoint with
/// 1 <= |A|+|B| <= d, met by some vertex outside A ∪ B adjacent to all of A and none of B.
double extension_stats(const LabeledHypergraph& g, int d);

}  // namespace gensample
