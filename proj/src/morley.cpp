#include "gensample/morley.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "gensample/error.hpp"

namespace gensample {
namespace {

constexpr double kStateGuard = 1e8;

// ---- common cell partition for several kernels ----

// Cells of each weight vector are consecutive intervals of [0,1]. Returns the common
// refinement's masses and, per input, the refined-cell -> own-cell map.
std::pair<Eigen::VectorXd, std::vector<std::vector<int>>> refine_level(
    const std::vector<Eigen::VectorXd>& ws) {
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& w : ws) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < w.size(); ++i) cuts.push_back(acc += w[i]);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts)
    if (merged.empty() || c - merged.back() > 1e-12) merged.push_back(std::min(c, 1.0));
  merged.back() = 1.0;
  const int m = static_cast<int>(merged.size()) - 1;
  Eigen::VectorXd out(m);
  for (int i = 0; i < m; ++i) out[i] = merged[i + 1] - merged[i];
  std::vector<std::vector<int>> maps;
  for (const auto& w : ws) {
    std::vector<int> map(m);
    for (int i = 0; i < m; ++i) {
      const double mid = 0.5 * (merged[i] + merged[i + 1]);
      double acc = 0.0;
      int c = 0;
      while (c + 1 < w.size() && mid >= acc + w[c]) acc += w[c++];
      map[i] = c;
    }
    maps.push_back(std::move(map));
  }
  return {out, maps};
}

std::vector<KeislerBackend> common_partition(const std::vector<KeislerBackend>& in) {
  if (in.size() <= 1) return in;
  const bool albert = in.front().is_albert();
  for (const auto& b : in) {
    if (b.kind() != in.front().kind()) {
      if (albert || b.is_albert()) throw ModelError("cannot mix Albert measures with kernel measures");
      throw ModelError("cannot mix graphon and hypergraphon backends");
    }
    if (b.arity() != in.front().arity()) throw ModelError("backends differ in arity");
  }
  if (albert) return in;
  std::vector<KeislerBackend> out;
  if (in.front().kind() == "graphon") {
    std::vector<Eigen::VectorXd> ws;
    for (const auto& b : in) ws.push_back(std::get<StepGraphon>(b.model).weights());
    auto [w, maps] = refine_level(ws);
    for (std::size_t b = 0; b < in.size(); ++b) {
      const auto& g = std::get<StepGraphon>(in[b].model);
      Eigen::MatrixXd v(w.size(), w.size());
      for (Eigen::Index i = 0; i < w.size(); ++i)
        for (Eigen::Index j = 0; j < w.size(); ++j) v(i, j) = g(maps[b][i], maps[b][j]);
      out.push_back({StepGraphon(w, v)});
    }
    return out;
  }
  const int k = in.front().arity();
  std::vector<Eigen::VectorXd> levels;
  std::vector<std::vector<std::vector<int>>> maps(in.size());
  for (int t = 1; t <= k - 1; ++t) {
    std::vector<Eigen::VectorXd> ws;
    for (const auto& b : in) ws.push_back(std::get<StepHypergraphon>(b.model).weights(t));
    auto [w, m] = refine_level(ws);
    levels.push_back(w);
    for (std::size_t b = 0; b < in.size(); ++b) maps[b].push_back(m[b]);
  }
  for (std::size_t b = 0; b < in.size(); ++b) {
    const auto& h = std::get<StepHypergraphon>(in[b].model);
    out.push_back({StepHypergraphon::from_function(k, levels, [&](std::span<const int> a) {
      std::vector<int> orig(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) orig[i] = maps[b][h.level_of(static_cast<int>(i)) - 1][a[i]];
      return h.value(orig);
    })});
  }
  return out;
}

// ---- compiled program ----

struct KernelLit {
  bool positive = true;
  std::vector<int> slots;  // one per local subset of [k]
};

struct Step {
  int var = 0;
  int model = 0;
  std::vector<int> new_slots;
  int coins = 0;
  int pos = 0;  // Albert counts
  int neg = 0;
  std::vector<KernelLit> lits;
};

struct Tree {
  int begin = 0;
  int end = 0;
  std::unique_ptr<Tree> left, right;
  bool leaf() const { return !left; }
};

class Engine {
 public:
  Engine(const std::vector<KeislerBackend>& models, const std::vector<int>& modelOfStep,
         const Conjunction& phi, const ParamContext& ctx, const std::vector<int>& sequence)
      : models_(common_partition(models)) {
    std::vector<int> sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != phi.free_vars())
      throw ModelError("elimination order is not a permutation of the free variables");
    for (const auto& m : models_)
      if (m.arity() != phi.arity()) throw ModelError("formula arity differs from backend arity");
    if (models.size() > 1 && !models_.front().is_albert() && !ctx.flat.empty())
      throw ModelError("context cells are ambiguous when kernels are put on a common partition");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      pos[sequence[i]] = static_cast<int>(i);
      steps_.push_back(Step{sequence[i], modelOfStep[i], {}, 0, 0, 0, {}});
    }
    if (phi.inconsistent()) {
      zero_ = true;
      return;
    }
    for (const auto& l : phi.literals()) {
      int owner = -1;
      for (const auto& t : l.slots)
        if (t.is_var()) owner = std::max(owner, pos.at(t.index));
      if (owner < 0) {
        if (l.has_elem()) throw ContextError("literal " + l.str() + " has no variable and involves M");
        if (ctx.adjacent(l.slots) != l.positive) zero_ = true;
        continue;
      }
      Step& st = steps_[owner];
      const auto& model = models_[st.model];
      if (model.is_albert()) {
        (l.positive ? st.pos : st.neg) += 1;
        continue;
      }
      if (l.has_elem()) {
        ++st.coins;
        continue;
      }
      KernelLit kl{l.positive, {}};
      for (const auto& I : local_subsets(model)) {
        TermSet sub;
        for (int i : I) sub.push_back(l.slots[i - 1]);
        kl.slots.push_back(slot_for(sub, pos, ctx, model));
      }
      st.lits.push_back(std::move(kl));
    }
    double states = 1.0;
    for (std::size_t s = 0; s + 1 < steps_.size(); ++s)
      for (int slot : steps_[s].new_slots) states *= cells_of(steps_[s].model, level_[slot]);
    if (states > kStateGuard)
      throw OverflowError("Morley recursion would visit " + std::to_string(states) + " states");
  }

  double value(const Tree& t) {
    if (zero_) return 0.0;
    if (t.leaf()) return leaf_value(t.begin, t.end);
    double total = 0.0;
    for (const auto& [key, w] : joint(*t.right)) {
      load(*t.right, key);
      total += w * value(*t.left);
    }
    return total;
  }

  double value_sequence() {
    if (zero_) return 0.0;
    return leaf_value(0, static_cast<int>(steps_.size()));
  }

 private:
  using Table = std::map<std::vector<int>, double>;

  static const std::vector<std::vector<int>>& local_subsets(const KeislerBackend& m) {
    static const std::vector<std::vector<int>> pair{{1}, {2}};
    if (const auto* h = std::get_if<StepHypergraphon>(&m.model)) return h->local_subsets();
    return pair;
  }

  int cells_of(int model, int level) const {
    const auto& m = models_[model];
    if (const auto* g = std::get_if<StepGraphon>(&m.model)) return g->cells();
    return std::get<StepHypergraphon>(m.model).cells(level);
  }

  double weight_of(int model, int level, int cell) const {
    const auto& m = models_[model];
    if (const auto* g = std::get_if<StepGraphon>(&m.model)) return g->weights()[cell];
    return std::get<StepHypergraphon>(m.model).weights(level)[cell];
  }

  double kernel(int model, const std::vector<int>& a) const {
    const auto& m = models_[model];
    if (const auto* g = std::get_if<StepGraphon>(&m.model)) return (*g)(a[0], a[1]);
    return std::get<StepHypergraphon>(m.model).value(a);
  }

  int slot_for(const TermSet& sub, const std::map<int, int>& pos, const ParamContext& ctx,
               const KeislerBackend& model) {
    auto it = slot_of_.find(sub);
    if (it != slot_of_.end()) return it->second;
    const int id = static_cast<int>(level_.size());
    level_.push_back(static_cast<int>(sub.size()));
    int latest = -1;
    for (const auto& t : sub)
      if (t.is_var()) latest = std::max(latest, pos.at(t.index));
    if (latest < 0) {
      const int c = ctx.flat_cell(sub);
      const int limit = std::holds_alternative<StepGraphon>(model.model)
                            ? std::get<StepGraphon>(model.model).cells()
                            : std::get<StepHypergraphon>(model.model).cells(static_cast<int>(sub.size()));
      if (c < 0 || c >= limit) throw ContextError("flat cell out of range for {" + join_terms(sub) + "}");
      cell_.push_back(c);
    } else {
      cell_.push_back(-1);
      steps_[latest].new_slots.push_back(id);
    }
    slot_of_.emplace(sub, id);
    return id;
  }

  double literal_factor(const Step& st) {
    double p = 1.0;
    for (const auto& l : st.lits) {
      args_.resize(l.slots.size());
      for (std::size_t i = 0; i < l.slots.size(); ++i) args_[i] = cell_[l.slots[i]];
      const double v = kernel(st.model, args_);
      p *= l.positive ? v : 1.0 - v;
    }
    return p;
  }

  // Calls emit(weight) once per assignment of st's new coordinates (cells left in cell_).
  template <class Emit>
  void branches(const Step& st, Emit&& emit) {
    const auto& m = models_[st.model];
    if (const auto* nu = std::get_if<MixtureMeasure>(&m.model)) {
      const double w = nu->moment(st.pos, st.neg);
      if (w > 0.0) emit(w);
      return;
    }
    const double base = std::ldexp(1.0, -st.coins);
    const auto& slots = st.new_slots;
    for (int s : slots) cell_[s] = 0;
    while (true) {
      double w = base;
      for (int s : slots) w *= weight_of(st.model, level_[s], cell_[s]);
      if (w > 0.0) w *= literal_factor(st);
      if (w > 0.0) emit(w);
      int i = static_cast<int>(slots.size()) - 1;
      while (i >= 0 && ++cell_[slots[i]] == cells_of(st.model, level_[slots[i]])) cell_[slots[i--]] = 0;
      if (i < 0) break;
    }
  }

  // Fiber of the last variable: delegated to the backend's evaluation cores.
  double fiber(const Step& st) {
    const auto& m = models_[st.model];
    if (const auto* nu = std::get_if<MixtureMeasure>(&m.model)) return nu->moment(st.pos, st.neg);
    if (const auto* g = std::get_if<StepGraphon>(&m.model)) {
      std::vector<int> pos, neg;
      for (const auto& l : st.lits) {
        const int other = std::find(st.new_slots.begin(), st.new_slots.end(), l.slots[0]) != st.new_slots.end()
                              ? l.slots[1]
                              : l.slots[0];
        (l.positive ? pos : neg).push_back(cell_[other]);
      }
      return mu_w_basic_cells(*g, st.coins, pos, neg);
    }
    FiberSpec spec;
    spec.coins = st.coins;
    for (int s : st.new_slots) spec.own_levels.push_back(level_[s]);
    for (const auto& l : st.lits) {
      FiberLiteral fl{l.positive, {}};
      for (int s : l.slots) {
        const auto it = std::find(st.new_slots.begin(), st.new_slots.end(), s);
        if (it != st.new_slots.end()) fl.args.push_back({true, static_cast<int>(it - st.new_slots.begin())});
        else fl.args.push_back({false, cell_[s]});
      }
      spec.literals.push_back(std::move(fl));
    }
    return hyper_fiber(std::get<StepHypergraphon>(m.model), spec);
  }

  double leaf_value(int j, int end) {
    if (j == end) return 1.0;
    if (j == end - 1) return fiber(steps_[j]);
    double total = 0.0;
    branches(steps_[j], [&](double w) { total += w * leaf_value(j + 1, end); });
    return total;
  }

  std::vector<int> key_of(int begin, int end) const {
    std::vector<int> key;
    for (int j = begin; j < end; ++j)
      for (int s : steps_[j].new_slots) key.push_back(cell_[s]);
    return key;
  }

  void load(const Tree& t, const std::vector<int>& key) {
    std::size_t i = 0;
    for (int j = t.begin; j < t.end; ++j)
      for (int s : steps_[j].new_slots) cell_[s] = key[i++];
  }

  void leaf_joint(int j, int begin, int end, double acc, Table& out) {
    if (j == end) {
      out[key_of(begin, end)] += acc;
      return;
    }
    branches(steps_[j], [&](double w) { leaf_joint(j + 1, begin, end, acc * w, out); });
  }

  // Joint law of the coordinates created inside t, given everything outside it.
  Table joint(const Tree& t) {
    Table out;
    if (t.leaf()) {
      leaf_joint(t.begin, t.begin, t.end, 1.0, out);
      return out;
    }
    for (const auto& [kr, wr] : joint(*t.right)) {
      load(*t.right, kr);
      for (const auto& [kl, wl] : joint(*t.left)) {
        auto key = kr;
        key.insert(key.end(), kl.begin(), kl.end());
        out[key] += wr * wl;
      }
    }
    return out;
  }

  std::vector<KeislerBackend> models_;
  std::vector<Step> steps_;
  std::map<TermSet, int> slot_of_;
  std::vector<int> level_;
  std::vector<int> cell_;
  std::vector<int> args_;
  bool zero_ = false;
};

}  // namespace

double DistributionTable::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double morley_power(const KeislerBackend& backend, const Conjunction& phi, const ParamContext& ctx,
                    const EliminationOrder& ord) {
  Engine e({backend}, std::vector<int>(ord.order.size(), 0), phi, ctx, ord.order);
  return e.value_sequence();
}

double morley_power(const KeislerBackend& backend, const Conjunction& phi) {
  return morley_power(backend, phi, ParamContext{phi.arity(), {}, {}, {}}, EliminationOrder::canonical(phi));
}

double morley_blocked(const std::vector<KeislerBackend>& backends, const Conjunction& phi,
                      const ParamContext& ctx, const std::vector<std::vector<int>>& blocks,
                      Bracketing bracketing) {
  if (blocks.empty() || blocks.size() > 3) throw ModelError("morley_blocked takes 1 to 3 blocks");
  if (backends.size() != 1 && backends.size() != blocks.size())
    throw ModelError("need one backend, or one per block");
  // the last block is sampled first
  std::vector<int> sequence, model;
  std::vector<std::pair<int, int>> range(blocks.size());
  for (int b = static_cast<int>(blocks.size()) - 1; b >= 0; --b) {
    range[b].first = static_cast<int>(sequence.size());
    for (int v : blocks[b]) {
      sequence.push_back(v);
      model.push_back(backends.size() == 1 ? 0 : b);
    }
    range[b].second = static_cast<int>(sequence.size());
  }
  auto leaf = [&](int b) {
    auto t = std::make_unique<Tree>();
    t->begin = range[b].first;
    t->end = range[b].second;
    return t;
  };
  auto node = [](std::unique_ptr<Tree> l, std::unique_ptr<Tree> r) {
    auto t = std::make_unique<Tree>();
    t->begin = r->begin;
    t->end = l->end;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
  };
  std::unique_ptr<Tree> root;
  if (blocks.size() == 1) root = leaf(0);
  else if (blocks.size() == 2) root = node(leaf(0), leaf(1));
  else if (bracketing == Bracketing::Left) root = node(node(leaf(0), leaf(1)), leaf(2));
  else root = node(leaf(0), node(leaf(1), leaf(2)));
  Engine e(backends, model, phi, ctx, sequence);
  return e.value(*root);
}

Spread permutation_spread(const KeislerBackend& backend, const Conjunction& phi, const ParamContext& ctx) {
  auto order = phi.free_vars();
  if (order.size() > 6) throw OverflowError("permutation_spread enumerates at most 6! orders");
  Spread s{1.0, 0.0};
  bool first = true;
  do {
    const double v = morley_power(backend, phi, ctx, {order});
    if (first) s = {v, v};
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    first = false;
  } while (std::next_permutation(order.begin(), order.end()));
  return s;
}

double dissociation_gap(const KeislerBackend& backend, const Conjunction& theta,
                        const Conjunction& psi, const ParamContext& ctx) {
  for (int v : theta.free_vars())
    if (std::binary_search(psi.free_vars().begin(), psi.free_vars().end(), v))
      throw ModelError("dissociation needs variable-disjoint formulas");
  const auto pt = theta.params();
  const auto pp = psi.params();
  for (const auto& t : pt)
    if (std::binary_search(pp.begin(), pp.end(), t))
      throw ModelError("dissociation needs parameter-disjoint formulas");
  const auto both = conjoin(theta, psi);
  const double joint = morley_power(backend, both, ctx, EliminationOrder::canonical(both));
  const double a = morley_power(backend, theta, ctx, EliminationOrder::canonical(theta));
  const double b = morley_power(backend, psi, ctx, EliminationOrder::canonical(psi));
  return std::abs(joint - a * b);
}

DistributionTable pushforward_distribution(const KeislerBackend& backend, int n) {
  const int k = backend.arity();
  const auto m = binomial(n, k);
  if (m > 20) throw OverflowError("pushforward table would have 2^" + std::to_string(m) + " entries");
  DistributionTable t{k, n, std::vector<double>(std::size_t{1} << m)};
  const ParamContext empty{k, {}, {}, {}};
  for (std::uint64_t mask = 0; mask < t.probs.size(); ++mask) {
    const auto phi = graph_formula(LabeledHypergraph::from_mask(k, n, mask));
    double p = morley_power(backend, phi, empty, EliminationOrder::canonical(phi));
    if (p < 0.0) {
      if (p < -1e-12) throw Error("negative pushforward entry " + std::to_string(p));
      p = 0.0;
    }
    t.probs[mask] = p;
  }
  if (std::abs(t.total() - 1.0) > 1e-9) throw Error("pushforward table does not sum to 1");
  return t;
}

}  // namespace gensample
