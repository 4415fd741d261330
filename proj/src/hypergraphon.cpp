#include "gensample/hypergraphon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gensample/error.hpp"

namespace gensample {
namespace {

constexpr double kStateGuard = 1e7;

int local_index(const std::vector<std::vector<int>>& local, const std::vector<int>& s) {
  auto it = std::find(local.begin(), local.end(), s);
  return static_cast<int>(it - local.begin());
}

// Coordinates of P_n and, per k-subset, the coordinate feeding each local subset.
struct Layout {
  std::vector<std::vector<int>> coords;
  std::vector<int> level;
  std::vector<std::vector<int>> args;

  Layout(int n, int k, const std::vector<std::vector<int>>& local) {
    coords = small_subsets(n, k - 1);
    std::map<std::vector<int>, int> at;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      at[coords[i]] = static_cast<int>(i);
      level.push_back(static_cast<int>(coords[i].size()));
    }
    for (const auto& a : k_subsets(n, k)) {
      std::vector<int> arg;
      for (const auto& l : local) {
        std::vector<int> sub;
        for (int p : l) sub.push_back(a[p - 1]);
        arg.push_back(at.at(sub));
      }
      args.push_back(std::move(arg));
    }
  }
};

}  // namespace

StepHypergraphon::StepHypergraphon(int k, std::vector<Eigen::VectorXd> weights)
    : k_(k), weights_(std::move(weights)) {
  if (k < 2) throw ModelError("hypergraphon arity must be at least 2");
  if (static_cast<int>(weights_.size()) != k - 1) throw ModelError("need one weight vector per arity 1..k-1");
  for (const auto& w : weights_) {
    if (w.size() == 0) throw ModelError("empty cell level");
    if ((w.array() < 0.0).any()) throw ModelError("negative cell weight");
    if (std::abs(w.sum() - 1.0) > 1e-12) throw ModelError("cell weights do not sum to 1");
  }
  local_ = small_subsets(k, k - 1);
  radix_.assign(local_.size(), 1);
  std::size_t size = 1;
  for (int i = static_cast<int>(local_.size()) - 1; i >= 0; --i) {
    radix_[i] = size;
    size *= static_cast<std::size_t>(cells(level_of(i)));
    if (static_cast<double>(size) > 1e8) throw OverflowError("hypergraphon table too large");
  }
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    perms_.push_back(sigma);
    std::vector<int> img;
    for (const auto& l : local_) {
      std::vector<int> s;
      for (int p : l) s.push_back(sigma[p - 1] + 1);
      std::sort(s.begin(), s.end());
      img.push_back(local_index(local_, s));
    }
    subset_image_.push_back(std::move(img));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  table_.assign(size, std::nan(""));
}

StepHypergraphon::StepHypergraphon(int k, std::vector<Eigen::VectorXd> weights,
                                   const std::vector<Entry>& entries)
    : StepHypergraphon(k, std::move(weights)) {
  for (const auto& [a, v] : entries) {
    if (!(v >= 0.0 && v <= 1.0)) throw ModelError("hypergraphon value outside [0,1]");
    for (const auto& sigma : perms_) {
      const std::size_t j = index_of(permute(a, sigma));
      if (!std::isnan(table_[j]) && table_[j] != v)
        throw ModelError("hypergraphon table violates Sym(k) symmetry");
      table_[j] = v;
    }
  }
  for (double v : table_)
    if (std::isnan(v)) throw ModelError("hypergraphon table has missing entries");
  check_symmetry_sample();
}

StepHypergraphon StepHypergraphon::from_function(int k, std::vector<Eigen::VectorXd> weights,
                                                 const std::function<double(std::span<const int>)>& f) {
  StepHypergraphon h(k, std::move(weights));
  for (std::size_t i = 0; i < h.table_.size(); ++i) {
    const double v = f(h.decode(i));
    if (!(v >= 0.0 && v <= 1.0)) throw ModelError("hypergraphon value outside [0,1]");
    h.table_[i] = v;
  }
  for (std::size_t i = 0; i < h.table_.size(); ++i) {
    const auto a = h.decode(i);
    for (const auto& sigma : h.perms_)
      if (h.table_[h.index_of(h.permute(a, sigma))] != h.table_[i])
        throw ModelError("hypergraphon table violates Sym(k) symmetry");
  }
  return h;
}

StepHypergraphon StepHypergraphon::constant(int k, double p) {
  return from_function(k, std::vector<Eigen::VectorXd>(k - 1, Eigen::VectorXd::Ones(1)),
                       [p](std::span<const int>) { return p; });
}

std::size_t StepHypergraphon::index_of(std::span<const int> a) const {
  if (a.size() != local_.size()) throw ModelError("assignment has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= cells(level_of(static_cast<int>(i)))) throw ModelError("cell index out of range");
    idx += static_cast<std::size_t>(a[i]) * radix_[i];
  }
  return idx;
}

StepHypergraphon::Assignment StepHypergraphon::decode(std::size_t index) const {
  Assignment a(local_.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<int>(index / radix_[i]);
    index %= radix_[i];
  }
  return a;
}

StepHypergraphon::Assignment StepHypergraphon::permute(std::span<const int> a,
                                                       std::span<const int> sigma) const {
  const auto it = std::find_if(perms_.begin(), perms_.end(), [&](const std::vector<int>& p) {
    return std::equal(p.begin(), p.end(), sigma.begin(), sigma.end());
  });
  if (it == perms_.end()) throw ModelError("not a permutation of [k]");
  const auto& img = subset_image_[it - perms_.begin()];
  Assignment b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[img[i]];
  return b;
}

void StepHypergraphon::check_symmetry_sample() const {
  Rng rng = replica_stream(0x5eed, 0);
  for (int t = 0; t < 100; ++t) {
    const auto idx = static_cast<std::size_t>(rng() % table_.size());
    const auto& sigma = perms_[rng() % perms_.size()];
    if (table_[index_of(permute(decode(idx), sigma))] != table_[idx])
      throw ModelError("hypergraphon table violates Sym(k) symmetry");
  }
}

StepHypergraphon as_hypergraphon(const StepGraphon& w) {
  return StepHypergraphon::from_function(2, {w.weights()},
                                         [&w](std::span<const int> a) { return w(a[0], a[1]); });
}

StepHypergraphon random_step_hypergraphon(int k, const std::vector<int>& cells, Rng& rng) {
  std::vector<Eigen::VectorXd> weights;
  for (int c : cells) {
    Eigen::VectorXd w(c);
    for (int i = 0; i < c; ++i) w[i] = -std::log(1.0 - uniform01(rng));
    w /= w.sum();
    w[c - 1] = 1.0 - (w.sum() - w[c - 1]);
    weights.push_back(std::move(w));
  }
  // one uniform draw per Sym(k) orbit, keyed by the least image of the assignment
  const auto probe = StepHypergraphon::from_function(k, weights, [](std::span<const int>) { return 0.0; });
  std::vector<std::vector<int>> perms;
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
  std::map<std::vector<int>, double> drawn;
  return StepHypergraphon::from_function(k, weights, [&](std::span<const int> a) {
    std::vector<int> rep(a.begin(), a.end());
    for (const auto& p : perms) rep = std::min(rep, probe.permute(a, p));
    auto it = drawn.find(rep);
    if (it == drawn.end()) it = drawn.emplace(rep, uniform01(rng)).first;
    return it->second;
  });
}

std::vector<char> sample_hypergraph_edges(const StepHypergraphon& w, int n, Rng& rng) {
  const Layout lay(n, w.arity(), w.local_subsets());
  std::vector<int> cell(lay.coords.size());
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const auto& wt = w.weights(lay.level[i]);
    cell[i] = draw_categorical(rng, std::span<const double>(wt.data(), wt.size()));
  }
  std::vector<char> edges;
  edges.reserve(lay.args.size());
  std::vector<int> a(w.local_subsets().size());
  for (const auto& arg : lay.args) {
    for (std::size_t i = 0; i < arg.size(); ++i) a[i] = cell[arg[i]];
    edges.push_back(uniform01(rng) < w.value(a));
  }
  return edges;
}

LabeledHypergraph sample_hypergraph(const StepHypergraphon& w, int n, std::uint64_t seed) {
  if (n < w.arity()) throw ModelError("sample_hypergraph needs n >= k");
  Rng rng = replica_stream(seed, 0);
  const auto bits = sample_hypergraph_edges(w, n, rng);
  std::vector<std::vector<int>> e;
  std::size_t b = 0;
  for (auto& s : k_subsets(n, w.arity()))
    if (bits[b++]) e.push_back(std::move(s));
  return LabeledHypergraph(w.arity(), n, std::move(e));
}

double hyper_density_exact(const StepHypergraphon& w, const LabeledHypergraph& h) {
  if (h.k != w.arity()) throw ModelError("hypergraph arity differs from kernel arity");
  const Layout lay(h.n, h.k, w.local_subsets());
  const std::size_t nc = lay.coords.size();
  double count = 1.0;
  for (std::size_t i = 0; i < nc; ++i) count *= w.cells(lay.level[i]);
  if (count > kStateGuard)
    throw OverflowError("hyper_density_exact: " + std::to_string(static_cast<long double>(count)) +
                        " cell assignments exceed the 1e7 guard");
  std::vector<char> edge;
  for (const auto& s : k_subsets(h.n, h.k)) edge.push_back(h.has_edge(s));
  std::vector<int> radix(nc);
  for (std::size_t i = 0; i < nc; ++i) radix[i] = w.cells(lay.level[i]);
  std::vector<int> c(nc, 0);
  std::vector<int> a(w.local_subsets().size());
  double total = 0.0;
  while (true) {
    double p = 1.0;
    for (std::size_t i = 0; i < nc; ++i) p *= w.weights(lay.level[i])[c[i]];
    for (std::size_t e = 0; e < lay.args.size(); ++e) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = c[lay.args[e][i]];
      const double v = w.value(a);
      p *= edge[e] ? v : 1.0 - v;
    }
    total += p;
    int i = static_cast<int>(nc) - 1;
    while (i >= 0 && ++c[i] == radix[i]) c[i--] = 0;
    if (i < 0) break;
  }
  return total;
}

Estimate hyper_density_mc(const StepHypergraphon& w, const LabeledHypergraph& h,
                          std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw ModelError("hyper_density_mc needs samples >= 1");
  if (h.k != w.arity()) throw ModelError("hypergraph arity differs from kernel arity");
  std::vector<char> target;
  for (const auto& s : k_subsets(h.n, h.k)) target.push_back(h.has_edge(s));
  std::vector<char> hit(samples, 0);
  for_each_sample(samples, seed, threads,
                  [&](std::uint64_t i, Rng& rng) { hit[i] = sample_hypergraph_edges(w, h.n, rng) == target; });
  Estimate est;
  est.samples = samples;
  for (char c : hit) est.hits += static_cast<std::uint64_t>(c);
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

}  // namespace gensample
