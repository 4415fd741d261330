#include "gensample/graphon.hpp"

#include <cmath>

#include "gensample/error.hpp"

namespace gensample {

StepGraphon::StepGraphon(Eigen::VectorXd weights, Eigen::MatrixXd values)
    : weights_(std::move(weights)), values_(std::move(values)) {
  const auto m = weights_.size();
  if (m == 0) throw ModelError("graphon needs at least one cell");
  if (values_.rows() != m || values_.cols() != m) throw ModelError("graphon dimensions inconsistent");
  if ((weights_.array() < 0.0).any()) throw ModelError("negative cell weight");
  if (std::abs(weights_.sum() - 1.0) > 1e-12) throw ModelError("cell weights do not sum to 1");
  if ((values_.array() < 0.0).any() || (values_.array() > 1.0).any() || !values_.allFinite())
    throw ModelError("graphon value outside [0,1]");
  if (values_ != values_.transpose()) throw ModelError("graphon values are asymmetric");
}

StepGraphon StepGraphon::constant(double p) {
  return StepGraphon(Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Constant(1, 1, p));
}

std::vector<char> sample_graph_edges(const StepGraphon& w, int n, Rng& rng) {
  std::vector<int> cell(n);
  const std::span<const double> wt(w.weights().data(), w.weights().size());
  for (int i = 0; i < n; ++i) cell[i] = draw_categorical(rng, wt);
  std::vector<char> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back(uniform01(rng) < w(cell[i], cell[j]));
  return edges;
}

LabeledHypergraph sample_graph(const StepGraphon& w, int n, std::uint64_t seed) {
  if (n < 1) throw ModelError("sample_graph needs n >= 1");
  Rng rng = replica_stream(seed, 0);
  auto bits = sample_graph_edges(w, n, rng);
  std::vector<std::vector<int>> e;
  std::size_t b = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (bits[b++]) e.push_back({i, j});
  return LabeledHypergraph(2, n, std::move(e));
}

double density_exact(const StepGraphon& w, const LabeledHypergraph& h) {
  if (h.k != 2) throw ModelError("density_exact needs a graph (k = 2)");
  const int n = h.n;
  const int m = w.cells();
  if (std::pow(static_cast<double>(m), n) > 1e7) throw OverflowError("density_exact: too many cell assignments");
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> edge;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      const int e[2] = {i + 1, j + 1};
      edge.push_back(h.has_edge(e));
    }
  std::vector<int> c(n, 0);
  double total = 0.0;
  while (true) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= w.weights()[c[i]];
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const double v = w(c[pairs[e].first], c[pairs[e].second]);
      p *= edge[e] ? v : 1.0 - v;
    }
    total += p;
    int i = n - 1;
    while (i >= 0 && ++c[i] == m) c[i--] = 0;
    if (i < 0) break;
  }
  return total;
}

Estimate density_mc(const StepGraphon& w, const LabeledHypergraph& h, std::uint64_t samples,
                    std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw ModelError("density_mc needs samples >= 1");
  if (h.k != 2) throw ModelError("density_mc needs a graph (k = 2)");
  std::vector<char> target;
  for (int i = 1; i <= h.n; ++i)
    for (int j = i + 1; j <= h.n; ++j) {
      const int e[2] = {i, j};
      target.push_back(h.has_edge(e));
    }
  std::vector<char> hit(samples, 0);
  for_each_sample(samples, seed, threads,
                  [&](std::uint64_t i, Rng& rng) { hit[i] = sample_graph_edges(w, h.n, rng) == target; });
  Estimate est;
  est.samples = samples;
  for (char c : hit) est.hits += static_cast<std::uint64_t>(c);
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

StepGraphon random_step_graphon(int m, Rng& rng) {
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w[i] = -std::log(1.0 - uniform01(rng));
  w /= w.sum();
  w[m - 1] = 1.0 - (w.sum() - w[m - 1]);
  Eigen::MatrixXd v(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) v(i, j) = v(j, i) = uniform01(rng);
  return StepGraphon(std::move(w), std::move(v));
}

}  // namespace gensample
