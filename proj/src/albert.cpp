#include "gensample/albert.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gensample/error.hpp"

namespace gensample {

MixtureMeasure::MixtureMeasure(std::vector<Atom> atoms, std::vector<BetaComponent> betas)
    : atoms_(std::move(atoms)), betas_(std::move(betas)) {
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.t >= 0.0 && a.t <= 1.0)) throw ModelError("atom location outside [0,1]");
    if (!(a.w >= 0.0)) throw ModelError("negative mixture weight");
    total += a.w;
    component_weights_.push_back(a.w);
  }
  for (const auto& b : betas_) {
    if (!(b.alpha > 0.0 && b.beta > 0.0)) throw ModelError("Beta parameters must be positive");
    if (!(b.w >= 0.0)) throw ModelError("negative mixture weight");
    total += b.w;
    component_weights_.push_back(b.w);
  }
  if (std::abs(total - 1.0) > 1e-12) throw ModelError("mixture weights do not sum to 1");
}

MixtureMeasure MixtureMeasure::dirac(double r) { return MixtureMeasure({{r, 1.0}}, {}); }

MixtureMeasure MixtureMeasure::two_point(double r) {
  return MixtureMeasure({{1.0, r}, {0.0, 1.0 - r}}, {});
}

MixtureMeasure MixtureMeasure::beta(double alpha, double beta) {
  return MixtureMeasure({}, {{alpha, beta, 1.0}});
}

double MixtureMeasure::moment(int a, int b) const {
  if (a < 0 || b < 0) throw ModelError("moment exponents must be nonnegative");
  double m = 0.0;
  for (const auto& at : atoms_) m += at.w * std::pow(at.t, a) * std::pow(1.0 - at.t, b);
  for (const auto& bc : betas_) {
    // B(α+a, β+b) / B(α, β)
    const double lg = std::lgamma(bc.alpha + a) + std::lgamma(bc.beta + b) -
                      std::lgamma(bc.alpha + bc.beta + a + b) - std::lgamma(bc.alpha) -
                      std::lgamma(bc.beta) + std::lgamma(bc.alpha + bc.beta);
    m += bc.w * std::exp(lg);
  }
  return std::clamp(m, 0.0, 1.0);
}

double MixtureMeasure::sample(Rng& rng) const {
  const int c = draw_categorical(rng, component_weights_);
  if (c < static_cast<int>(atoms_.size())) return atoms_[c].t;
  const auto& bc = betas_[c - atoms_.size()];
  std::gamma_distribution<double> ga(bc.alpha, 1.0);
  std::gamma_distribution<double> gb(bc.beta, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return (x + y) > 0.0 ? x / (x + y) : 0.5;
}

double mu_nu_eval(const MixtureMeasure& nu, std::vector<std::string> positives,
                  std::vector<std::string> negatives) {
  std::sort(positives.begin(), positives.end());
  positives.erase(std::unique(positives.begin(), positives.end()), positives.end());
  std::sort(negatives.begin(), negatives.end());
  negatives.erase(std::unique(negatives.begin(), negatives.end()), negatives.end());
  for (const auto& p : positives)
    if (std::binary_search(negatives.begin(), negatives.end(), p)) return 0.0;
  return nu.moment(static_cast<int>(positives.size()), static_cast<int>(negatives.size()));
}

std::vector<char> albert_sample_edges(const MixtureMeasure& nu, int n, Rng& rng) {
  // pair (j, l), j < l, sits at lex position (j-1)(2n-j)/2 + (l-j-1)
  std::vector<char> bits(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int l = 1; l <= n; ++l) {
    const double t = nu.sample(rng);
    for (int j = 1; j < l; ++j)
      if (uniform01(rng) < t) bits[static_cast<std::size_t>((j - 1) * (2 * n - j) / 2 + (l - j - 1))] = 1;
  }
  return bits;
}

LabeledHypergraph albert_generic_sample(const MixtureMeasure& nu, int n, std::uint64_t seed) {
  if (n < 1) throw ModelError("albert_generic_sample needs n >= 1");
  Rng rng = replica_stream(seed, 0);
  const auto bits = albert_sample_edges(nu, n, rng);
  std::vector<std::vector<int>> edges;
  std::size_t b = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (bits[b++]) edges.push_back({i, j});
  return LabeledHypergraph(2, n, std::move(edges));
}

double albert_morley(const MixtureMeasure& nu, const Conjunction& phi, std::span<const int> order) {
  if (phi.arity() != 2) throw ModelError("Albert measures live on graphs (k = 2)");
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != phi.free_vars()) throw ModelError("order is not a permutation of the free variables");
  if (phi.inconsistent()) return 0.0;
  std::map<int, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::map<int, std::pair<int, int>> counts;  // owner -> (positives, negatives)
  for (const auto& l : phi.literals()) {
    const Term& u = l.slots[0];
    const Term& v = l.slots[1];
    int owner;
    if (u.is_var() && v.is_var()) owner = pos[u.index] > pos[v.index] ? u.index : v.index;
    else if (u.is_var()) owner = u.index;
    else if (v.is_var()) owner = v.index;
    else throw ModelError("literal between two parameters has no variable to own it");
    auto& c = counts[owner];
    (l.positive ? c.first : c.second) += 1;
  }
  double p = 1.0;
  for (int x : order) {
    const auto& c = counts[x];
    p *= nu.moment(c.first, c.second);
  }
  return p;
}

}  // namespace gensample
