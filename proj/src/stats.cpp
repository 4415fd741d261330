#include "gensample/stats.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "gensample/error.hpp"
#include "gensample/rng.hpp"

namespace gensample {
namespace {

std::uint64_t mask_of(const std::vector<char>& bits) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

std::uint64_t EmpiricalCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

EmpiricalCounts sample_counts(const KeislerBackend& backend, int n, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads) {
  const int k = backend.arity();
  if (n < k) throw ModelError("sample_counts needs n >= k");
  const auto slots = binomial(n, k);
  if (slots > 20) throw OverflowError("sample_counts supports at most 20 k-subsets");
  std::vector<std::uint64_t> masks(samples);
  for_each_sample(samples, seed, threads, [&](std::uint64_t i, Rng& rng) {
    std::vector<char> bits;
    if (const auto* nu = std::get_if<MixtureMeasure>(&backend.model)) bits = albert_sample_edges(*nu, n, rng);
    else if (const auto* g = std::get_if<StepGraphon>(&backend.model)) bits = sample_graph_edges(*g, n, rng);
    else bits = sample_hypergraph_edges(std::get<StepHypergraphon>(backend.model), n, rng);
    masks[i] = mask_of(bits);
  });
  EmpiricalCounts out{k, n, std::vector<std::uint64_t>(std::size_t{1} << slots, 0)};
  for (auto m : masks) ++out.counts[m];
  return out;
}

EmpiricalCounts resample_table(const DistributionTable& table, std::uint64_t samples, std::uint64_t seed) {
  Rng rng = replica_stream(seed, 0);
  EmpiricalCounts out{table.k, table.n, std::vector<std::uint64_t>(table.probs.size(), 0)};
  for (std::uint64_t s = 0; s < samples; ++s) ++out.counts[draw_categorical(rng, table.probs)];
  return out;
}

ComparisonReport compare_distributions(const DistributionTable& table, const EmpiricalCounts& counts) {
  if (table.k != counts.k || table.n != counts.n || table.probs.size() != counts.counts.size())
    throw ModelError("table and counts describe different spaces");
  ComparisonReport r;
  r.samples = counts.total();
  if (r.samples == 0) throw ModelError("no samples to compare");
  const double N = static_cast<double>(r.samples);

  r.residuals.resize(table.probs.size());
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    r.residuals[i] = static_cast<double>(counts.counts[i]) / N - table.probs[i];
    r.tv += std::abs(r.residuals[i]);
  }
  r.tv /= 2.0;

  std::vector<double> expected, observed;
  double poolE = 0.0, poolO = 0.0;
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    const double e = N * table.probs[i];
    const double o = static_cast<double>(counts.counts[i]);
    if (e >= 5.0) {
      expected.push_back(e);
      observed.push_back(o);
    } else {
      poolE += e;
      poolO += o;
    }
  }
  if (poolE >= 5.0 || expected.empty()) {
    expected.push_back(poolE);
    observed.push_back(poolO);
  } else if (poolE > 0.0 || poolO > 0.0) {
    const auto j = std::min_element(expected.begin(), expected.end()) - expected.begin();
    expected[j] += poolE;
    observed[j] += poolO;
  }
  r.bins = static_cast<int>(expected.size());
  for (std::size_t b = 0; b < expected.size(); ++b) {
    if (expected[b] > 0.0) r.chi_square += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
    else if (observed[b] > 0.0) r.chi_square = std::numeric_limits<double>::infinity();
  }
  r.dof = r.bins - 1;
  if (r.dof <= 0) r.p_value = 1.0;
  else if (std::isinf(r.chi_square)) r.p_value = 0.0;
  else r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.chi_square));
  return r;
}

ThresholdResult threshold_recognize(const LabeledHypergraph& g) {
  if (g.k != 2) throw ModelError("threshold recognition is for graphs");
  const int n = g.n;
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (const auto& e : g.edges) adj[e[0]][e[1]] = adj[e[1]][e[0]] = 1;
  std::vector<char> alive(n + 1, 1);
  std::vector<int> deg(n + 1, 0);
  for (const auto& e : g.edges) ++deg[e[0]], ++deg[e[1]];
  int left = n;
  std::string removed;  // last created first
  while (left > 0) {
    int pick = -1;
    char tag = 0;
    for (int v = 1; v <= n && pick < 0; ++v) {
      if (!alive[v]) continue;
      if (deg[v] == 0) pick = v, tag = 'i';
      else if (deg[v] == left - 1) pick = v, tag = 'u';
    }
    if (pick < 0) break;
    alive[pick] = 0;
    --left;
    for (int u = 1; u <= n; ++u)
      if (alive[u] && adj[pick][u]) --deg[u];
    removed.push_back(tag);
  }
  ThresholdResult r;
  r.is_threshold = left == 0;
  r.creation.assign(removed.rbegin(), removed.rend());
  for (int v = 1; v <= n; ++v)
    if (alive[v]) r.stuck.push_back(v);
  return r;
}

double extension_stats(const LabeledHypergraph& g, int d) {
  if (g.k != 2) throw ModelError("extension statistics are for graphs");
  if (d < 1) throw ModelError("extension depth must be >= 1");
  const int n = g.n;
  const int probe = std::min(n, kExtensionProbeSize);
  std::vector<std::uint64_t> nbr(n + 1, 0);  // neighbours among probe vertices
  for (const auto& e : g.edges) {
    if (e[0] <= probe) nbr[e[1]] |= std::uint64_t{1} << (e[0] - 1);
    if (e[1] <= probe) nbr[e[0]] |= std::uint64_t{1} << (e[1] - 1);
  }
  std::uint64_t demands = 0, met = 0;
  const std::uint64_t full = (std::uint64_t{1} << probe) - 1;
  for (std::uint64_t used = 1; used <= full; ++used) {
    if (std::popcount(used) > d) continue;
    for (std::uint64_t a = used;; a = (a - 1) & used) {  // A ⊆ used, B = used \ A
      ++demands;
      for (int v = 1; v <= n; ++v) {
        if (v <= probe && (used >> (v - 1) & 1)) continue;
        if ((nbr[v] & used) == a) {
          ++met;
          break;
        }
      }
      if (a == 0) break;
    }
  }
  return demands ? static_cast<double>(met) / static_cast<double>(demands) : 1.0;
}

}  // namespace gensample
