#include "gensample/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "gensample/albert.hpp"
#include "gensample/error.hpp"
#include "gensample/graphon.hpp"
#include "gensample/hypergraphon.hpp"
#include "gensample/morley.hpp"
#include "gensample/stats.hpp"

namespace gensample {

using nlohmann::json;

namespace {

int uniform_int(Rng& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(uniform01(rng) * (hi - lo + 1));
}

bool coin(Rng& rng) { return uniform01(rng) < 0.5; }

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL)); }

double hash_unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

TermSet names(char prefix, int from, int count) {
  std::vector<Term> out;
  for (int i = from + 1; i <= from + count; ++i) {
    const std::string n = std::string(1, prefix) + std::to_string(i);
    out.push_back(prefix == 'c' ? Term::ctx(n) : Term::elem(n));
  }
  return make_term_set(out);
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---- suites ----

void suite_albert_values(VerifyReport& rep) {
  const double r = 0.3;
  const auto two = MixtureMeasure::two_point(r);
  const KeislerBackend twoB{two};
  const std::vector<int> asc{1, 2, 3};
  const auto path = parse_formula("R(x3,x2)&R(x2,x1)", 2);
  const auto star = parse_formula("R(x3,x2)&R(x3,x1)", 2);
  const auto edge = parse_formula("R(x2,x1)", 2);
  const double vPath = albert_morley(two, path, asc);
  const double vStar = albert_morley(two, star, asc);
  const double vEdge = albert_morley(two, edge, std::vector<int>{1, 2});
  rep.record(std::abs(vPath - r * r));
  rep.record(std::abs(vStar - r));
  rep.record(std::abs(vEdge - r));
  rep.record(std::abs(morley_power(twoB, path) - r * r));
  rep.record(std::abs(morley_power(twoB, star) - r));

  const auto leb = MixtureMeasure::lebesgue();
  const KeislerBackend lebB{leb};
  const double third = mu_nu_eval(leb, {"mb", "mc"}, {});
  const auto psi = parse_formula("R(x1,x2)&R(x1,mb)&!R(x2,mc)", 2);
  const double yx = albert_morley(leb, psi, std::vector<int>{2, 1});
  const double xy = albert_morley(leb, psi, std::vector<int>{1, 2});
  rep.record(std::abs(third - 1.0 / 3.0));
  rep.record(std::abs(yx - 1.0 / 6.0));
  rep.record(std::abs(xy - 1.0 / 12.0));
  rep.record(std::abs(morley_power(lebB, psi, {}, {{2, 1}}) - 1.0 / 6.0));
  rep.record(std::abs(morley_power(lebB, psi, {}, {{1, 2}}) - 1.0 / 12.0));
  rep.details = {{"r", r},          {"path", vPath}, {"star", vStar}, {"edge", vEdge},
                 {"lebesgue_two_positive", third}, {"psi_yx", yx},    {"psi_xy", xy}};
}

void suite_sumprod(VerifyReport& rep, Rng& rng) {
  for (int t = 0; t < 100; ++t) {
    const int k = uniform_int(rng, 1, 6);
    std::vector<double> a(k);
    for (auto& v : a) {
      const double u = uniform01(rng);
      v = u < 0.1 ? 0.0 : u < 0.2 ? 1.0 : uniform01(rng);
    }
    rep.record(std::abs(sumprod_identity(a) - 1.0));
  }
}

DistributionTable exact_table(const KeislerBackend& b, int n) { return pushforward_distribution(b, n); }

void mc_check(VerifyReport& rep, const KeislerBackend& b, int n, std::uint64_t seed, double bound, json& tvs) {
  const auto table = exact_table(b, n);
  const auto counts = sample_counts(b, n, kTvSamples, seed);
  const auto cmp = compare_distributions(table, counts);
  tvs.push_back(cmp.tv);
  rep.require(cmp.tv <= bound, "sampler TV " + std::to_string(cmp.tv) + " exceeds " + std::to_string(bound));
}

void suite_theorem_graphon(VerifyReport& rep, Rng& rng, std::uint64_t seed) {
  json tvs = json::array();
  int graphs = 0;
  for (int t = 0; t < 20; ++t) {
    const auto w = random_step_graphon(1 + t % 4, rng);
    const KeislerBackend b{w};
    for (int n = 1; n <= 5; ++n) {
      const auto slots = binomial(n, 2);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots); ++m) {
        const auto h = LabeledHypergraph::from_mask(2, n, m);
        rep.record(std::abs(morley_power(b, graph_formula(h)) - density_exact(w, h)));
        ++graphs;
      }
    }
    if (t < 5) mc_check(rep, b, 4, mix(seed, t), kGraphTvBound, tvs);
  }
  rep.details = {{"kernels", 20}, {"graphs", graphs}, {"tv", tvs}, {"tv_bound", kGraphTvBound}};
}

void suite_theorem_hypergraph(VerifyReport& rep, Rng& rng, std::uint64_t seed) {
  json tvs = json::array();
  for (int t = 0; t < 5; ++t) {
    const auto w = random_step_hypergraphon(3, {uniform_int(rng, 1, 2), uniform_int(rng, 1, 2)}, rng);
    const KeislerBackend b{w};
    for (std::uint64_t m = 0; m < 16; ++m) {
      const auto h = LabeledHypergraph::from_mask(3, 4, m);
      rep.record(std::abs(morley_power(b, graph_formula(h)) - hyper_density_exact(w, h)));
    }
    mc_check(rep, b, 4, mix(seed, 100 + t), kHyperTvBound, tvs);
  }
  rep.details = {{"kernels", 5}, {"graphs_per_kernel", 16}, {"tv", tvs}, {"tv_bound", kHyperTvBound}};
}

void suite_excellence(VerifyReport& rep, Rng& rng) {
  json spreads = json::array();
  for (int t = 0; t < 50; ++t) {
    const int k = t % 2 ? 3 : 2;
    const auto b = random_kernel_backend(k, k == 2 ? 3 : 2, rng);
    FormulaShape shape;
    shape.k = k;
    shape.vars = uniform_int(rng, 2, 4);
    shape.ctx_params = uniform_int(rng, 0, 2);
    shape.m_elems = uniform_int(rng, 0, 1);
    shape.ctx_params = std::max(shape.ctx_params, k - shape.vars - shape.m_elems);
    const auto phi = random_formula(shape, rng);
    const auto ctx = random_context(k, names('c', 0, shape.ctx_params), cell_counts(b), rng);
    const double s = permutation_spread(b, phi, ctx).spread();
    spreads.push_back(s);
    rep.record(s);
  }
  const auto psi = parse_formula("R(x1,x2)&R(x1,mb)&!R(x2,mc)", 2);
  const double leb = permutation_spread(KeislerBackend{MixtureMeasure::lebesgue()}, psi).spread();
  rep.record(std::abs(leb - 1.0 / 12.0), 1e-12);
  const auto tri = parse_formula("R(x1,x2)&R(x2,x3)&!R(x1,x3)&R(x3,mb)", 2);
  const double dirac = permutation_spread(KeislerBackend{MixtureMeasure::dirac(0.4)}, tri).spread();
  rep.record(dirac, 1e-12);
  rep.details = {{"spreads", spreads}, {"lebesgue_psi_spread", leb}, {"dirac_spread", dirac}};
}

void suite_key(VerifyReport& rep, Rng& rng) {
  for (int t = 0; t < 50; ++t) {
    const auto w = random_step_graphon(uniform_int(rng, 1, 3), rng);
    const int coins = uniform_int(rng, 0, 2);
    const auto ctx = random_context(2, names('c', 0, uniform_int(rng, 0, 2)), {w.cells()}, rng);
    const std::uint64_t salt = rng();
    KeyFunction f;
    switch (t % 3) {
      case 0: f = [](const KeyPoint&) { return 1.0; }; break;
      case 1: f = [](const KeyPoint& p) { return p.cell == 0 ? 1.0 : 0.0; }; break;
      default:
        f = [salt](const KeyPoint& p) {
          std::uint64_t h = mix(salt, static_cast<std::uint64_t>(p.cell));
          for (bool c : p.coins) h = mix(h, c);
          for (bool a : p.adj) h = mix(h, a + 2);
          return hash_unit(h);
        };
    }
    const auto [lhs, rhs] = check_key(w, coins, f, ctx);
    rep.record(std::abs(lhs - rhs));
  }
}

void suite_key3(VerifyReport& rep, Rng& rng) {
  for (int t = 0; t < 25; ++t) {
    const auto w = random_step_hypergraphon(3, {uniform_int(rng, 1, 2), uniform_int(rng, 1, 2)}, rng);
    const auto B = names('m', 0, uniform_int(rng, 0, 2));
    const auto C = names('c', 0, uniform_int(rng, 0, 2));
    const auto ctx = random_context(3, C, {w.cells(1), w.cells(2)}, rng);
    const std::uint64_t salt = rng();
    Key3Function f = [salt](const Key3Point& p) {
      std::uint64_t h = mix(salt, static_cast<std::uint64_t>(p.p));
      for (const auto& [s, c] : p.q) h = mix(h, static_cast<std::uint64_t>(c));
      for (const auto& [s, c] : p.coins) h = mix(h, c);
      for (const auto& [s, a] : p.r) h = mix(h, a + 2);
      return hash_unit(h);
    };
    const auto [lhs, rhs] = check_key3(w, B, C, f, ctx);
    rep.record(std::abs(lhs - rhs));
  }
}

void suite_additivity(VerifyReport& rep, Rng& rng, double tol) {
  json cases = json::array();
  for (int t = 0; t < 100; ++t) {
    const int kase = 1 + t % 3;
    const auto w = random_step_hypergraphon(3, {uniform_int(rng, 1, 2), uniform_int(rng, 1, 2)}, rng);
    const auto B = names('m', 0, uniform_int(rng, 0, 2));
    const auto C = names('c', 0, uniform_int(rng, 0, 2));
    CompleteFormula xi{3, 1, B, C, {}};
    for (const auto& key : completion_keys(B, C, 3)) xi.sign[key] = coin(rng);

    // γ = R^±(x, s1, s2): Case 1 both M, Case 2 both external, Case 3 one of each.
    const char kinds[2] = {kase == 2 ? 'c' : 'm', kase == 1 ? 'm' : 'c'};
    std::vector<Term> slots{Term::var(1)};
    int fresh = 0;
    for (int s = 0; s < 2; ++s) {
      const TermSet& pool = kinds[s] == 'm' ? B : C;
      const bool reuse = !pool.empty() && coin(rng) && !(s == 1 && fresh == 0);
      Term cand = reuse ? pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)]
                        : names(kinds[s], 8 + s, 1).front();
      if (std::find(slots.begin(), slots.end(), cand) != slots.end()) cand = names(kinds[s], 8 + s, 1).front();
      if (!(cand.is_elem() ? std::binary_search(B.begin(), B.end(), cand)
                           : std::binary_search(C.begin(), C.end(), cand)))
        ++fresh;
      slots.push_back(cand);
    }
    const auto gamma = make_literal(coin(rng), slots, 3);
    std::vector<Term> allC = C;
    for (const auto& s : gamma.slots)
      if (s.is_ctx()) allC.push_back(s);
    const auto ctx = random_context(3, make_term_set(allC), {w.cells(1), w.cells(2)}, rng);
    const auto [sum, parent] = check_additivity(w, xi, gamma, ctx);
    rep.record(std::abs(sum - parent));
    cases.push_back(kase);
  }

  const double basicTol = std::min(tol, 1e-12);
  for (int t = 0; t < 100; ++t) {
    const auto w = random_step_graphon(uniform_int(rng, 1, 3), rng);
    std::vector<Term> A, Bn, Cp, Dn;
    for (const auto& m : names('m', 0, 3))
      if (const double u = uniform01(rng); u < 1.0 / 3) A.push_back(m);
      else if (u < 2.0 / 3) Bn.push_back(m);
    for (const auto& c : names('c', 0, 3))
      if (const double u = uniform01(rng); u < 1.0 / 3) Cp.push_back(c);
      else if (u < 2.0 / 3) Dn.push_back(c);
    const bool elemEvent = t % 2 == 0;
    const Term e = elemEvent ? Term::elem("m9") : Term::ctx("c9");
    const auto ctx = random_context(2, names('c', 0, 3), {w.cells()}, rng);
    auto ctx9 = ctx;
    ctx9.params.push_back(Term::ctx("c9"));
    ctx9.params = make_term_set(ctx9.params);
    ctx9.flat[{Term::ctx("c9")}] = uniform_int(rng, 0, w.cells() - 1);
    const auto mu = [&](std::vector<Term> a, std::vector<Term> b, std::vector<Term> c, std::vector<Term> d) {
      return mu_w_basic(w, make_term_set(a), make_term_set(b), make_term_set(c), make_term_set(d), ctx9);
    };
    const double parent = mu(A, Bn, Cp, Dn);
    double split;
    if (elemEvent) {
      auto A2 = A, B2 = Bn;
      A2.push_back(e);
      B2.push_back(e);
      split = mu(A2, Bn, Cp, Dn) + mu(A, B2, Cp, Dn);
    } else {
      auto C2 = Cp, D2 = Dn;
      C2.push_back(e);
      D2.push_back(e);
      split = mu(A, Bn, C2, Dn) + mu(A, Bn, Cp, D2);
    }
    rep.record(std::abs(split - parent), basicTol);
  }
  rep.details = {{"cases", cases}, {"basic_tolerance", basicTol}};
}

KeislerBackend random_albert(Rng& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return {MixtureMeasure::two_point(uniform01(rng))};
    case 1: return {MixtureMeasure::beta(0.5 + 3 * uniform01(rng), 0.5 + 3 * uniform01(rng))};
    case 2: return {MixtureMeasure::lebesgue()};
    default: {
      const double a = 0.2 + 0.6 * uniform01(rng);
      return {MixtureMeasure({{uniform01(rng), a / 2}, {1.0, a / 2}}, {{2.0, 5.0, 1.0 - a}})};
    }
  }
}

void suite_dissociation(VerifyReport& rep, Rng& rng) {
  json families = json::array();
  for (int t = 0; t < 50; ++t) {
    const int family = t % 3;  // graphon, hypergraphon, albert
    const int k = family == 1 ? 3 : 2;
    const auto b = family == 2 ? random_albert(rng) : random_kernel_backend(k, 2, rng);
    const int a = uniform_int(rng, 1, 2), c = uniform_int(rng, 1, 2);
    const bool params = family != 2;
    FormulaShape s1{k, 1, a, params ? 1 : 0, 1, 0, 0, 4};
    FormulaShape s2{k, 1 + a, c, params ? 1 : 0, 1, 1, 1, 4};
    const auto theta = random_formula(s1, rng);
    const auto psi = random_formula(s2, rng);
    TermSet ps;
    if (params) ps = names('c', 0, 2);
    const auto ctx = family == 2 ? ParamContext{} : random_context(k, ps, cell_counts(b), rng);
    const double gap = dissociation_gap(b, theta, psi, ctx);
    rep.record(gap);
    families.push_back(b.kind());
  }
  rep.details = {{"families", families}};
}

// Closed-form oracle for Albert blocks: each literal's owner draws from its block's measure.
double albert_blocked_oracle(const std::vector<KeislerBackend>& bs, const Conjunction& phi,
                             const std::vector<std::vector<int>>& blocks) {
  std::vector<int> seq;
  std::map<int, int> blockOf;
  for (int i = static_cast<int>(blocks.size()) - 1; i >= 0; --i)
    for (int v : blocks[i]) seq.push_back(v), blockOf[v] = i;
  std::map<int, int> pos;
  for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = static_cast<int>(i);
  std::map<int, std::pair<int, int>> counts;
  for (const auto& l : phi.literals()) {
    int owner = -1;
    for (const auto& s : l.slots)
      if (s.is_var() && (owner < 0 || pos[s.index] > pos[owner])) owner = s.index;
    (l.positive ? counts[owner].first : counts[owner].second) += 1;
  }
  double v = phi.inconsistent() ? 0.0 : 1.0;
  for (const auto& [var, pn] : counts)
    v *= std::get<MixtureMeasure>(bs[blockOf[var]].model).moment(pn.first, pn.second);
  return v;
}

void suite_associativity(VerifyReport& rep, Rng& rng) {
  json kinds = json::array();
  for (int t = 0; t < 30; ++t) {
    const int family = t % 3;
    const int k = family == 1 ? 3 : 2;
    const int vars = uniform_int(rng, 3, k == 3 ? 4 : 5);
    std::vector<std::vector<int>> blocks(3);
    for (int v = 1; v <= 3; ++v) blocks[v - 1].push_back(v);
    for (int v = 4; v <= vars; ++v) blocks[uniform_int(rng, 0, 2)].push_back(v);

    std::vector<KeislerBackend> mixed;
    for (int i = 0; i < 3; ++i)
      mixed.push_back(family == 2 ? random_albert(rng) : random_kernel_backend(k, k == 3 ? 2 : 3, rng));
    FormulaShape shape{k, 1, vars, 0, uniform_int(rng, k == 3 ? 1 : 0, 2), 0, 0, 7};
    const auto phi = random_formula(shape, rng);
    const double left = morley_blocked(mixed, phi, {}, blocks, Bracketing::Left);
    const double right = morley_blocked(mixed, phi, {}, blocks, Bracketing::Right);
    rep.record(std::abs(left - right));
    if (family == 2) rep.record(std::abs(left - albert_blocked_oracle(mixed, phi, blocks)));

    // one backend with context parameters, against the flat sequence B3, B2, B1
    FormulaShape cshape = shape;
    cshape.ctx_params = 2;
    const auto& single = mixed.front();
    const auto phi2 = random_formula(cshape, rng);
    const auto ctx = single.is_albert() ? ParamContext{} : random_context(k, names('c', 0, 2), cell_counts(single), rng);
    const double l2 = morley_blocked({single}, phi2, ctx, blocks, Bracketing::Left);
    const double r2 = morley_blocked({single}, phi2, ctx, blocks, Bracketing::Right);
    EliminationOrder seq;
    for (int i = 2; i >= 0; --i) seq.order.insert(seq.order.end(), blocks[i].begin(), blocks[i].end());
    const double flat = morley_power(single, phi2, ctx, seq);
    rep.record(std::abs(l2 - r2));
    rep.record(std::abs(l2 - flat));
    kinds.push_back(single.kind());
  }
  rep.details = {{"kinds", kinds}};
}

void suite_threshold(VerifyReport& rep, std::uint64_t seed) {
  const auto nu = MixtureMeasure::two_point(0.3);
  int recognized = 0;
  for (int i = 0; i < 1000; ++i)
    recognized += threshold_recognize(albert_generic_sample(nu, 30, mix(seed, i))).is_threshold;
  std::set<CanonicalForm> forms;
  for (int i = 0; i < 1000; ++i) forms.insert(canonical_form_refined(albert_generic_sample(nu, 12, mix(seed, 5000 + i))));
  rep.require(recognized == 1000, "only " + std::to_string(recognized) + "/1000 samples are threshold graphs");
  rep.require(forms.size() > 50, "only " + std::to_string(forms.size()) + " distinct forms at n = 12");
  rep.details = {{"r", 0.3}, {"threshold_n30", recognized}, {"samples", 1000},
                 {"distinct_forms_n12", forms.size()}};
}

void suite_rado(VerifyReport& rep, std::uint64_t seed) {
  const auto nu = MixtureMeasure::beta(2.0, 2.0);
  int full = 0, monotone = 0;
  json small = json::array();
  for (int i = 0; i < 100; ++i) {
    const auto s = mix(seed, 9000 + i);
    const double f200 = extension_stats(albert_generic_sample(nu, 200, s), 3);
    const double f10 = extension_stats(albert_generic_sample(nu, 10, s), 3);
    full += f200 == 1.0;
    monotone += f10 <= f200;
    small.push_back(f10);
  }
  rep.require(full >= 99, "fraction 1 at n = 200 on only " + std::to_string(full) + "/100 seeds");
  rep.require(monotone >= 95, "paired fraction non-decreasing on only " + std::to_string(monotone) + "/100 seeds");
  rep.details = {{"full_n200", full}, {"monotone", monotone}, {"fraction_n10", small}, {"d", 3}};
}

void suite_normalization(VerifyReport& rep, Rng& rng) {
  json totals = json::array();
  std::vector<std::pair<KeislerBackend, int>> cases{{KeislerBackend{StepGraphon::constant(0.5)}, 3},
                                                    {KeislerBackend{MixtureMeasure::two_point(0.3)}, 4},
                                                    {KeislerBackend{MixtureMeasure::beta(2.0, 2.0)}, 4}};
  for (int t = 0; t < 4; ++t) cases.emplace_back(random_kernel_backend(2, 4, rng), 4);
  for (int t = 0; t < 3; ++t) cases.emplace_back(random_kernel_backend(3, 2, rng), 4);
  for (const auto& [b, n] : cases) {
    const auto table = pushforward_distribution(b, n);
    totals.push_back(table.total());
    rep.record(std::abs(table.total() - 1.0));
    if (b.is_albert()) continue;
    const auto perms = all_permutations(n);
    for (std::uint64_t m = 0; m < table.probs.size(); ++m) {
      const auto h = table.graph(m);
      for (const auto& p : perms) {
        std::vector<int> sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = p[i] + 1;
        rep.record(std::abs(table.probs[m] - table.probs[h.relabel(sigma).mask()]));
      }
    }
  }
  rep.details = {{"totals", totals}};
}

}  // namespace

Conjunction random_formula(const FormulaShape& shape, Rng& rng) {
  std::vector<Term> pool;
  for (int v = shape.first_var; v < shape.first_var + shape.vars; ++v) pool.push_back(Term::var(v));
  for (const auto& c : names('c', shape.ctx_offset, shape.ctx_params)) pool.push_back(c);
  for (const auto& m : names('m', shape.m_offset, shape.m_elems)) pool.push_back(m);
  const int k = shape.k;
  if (shape.vars < 1 || static_cast<int>(pool.size()) < k) throw ModelError("formula shape has fewer than k terms");

  std::map<TermSet, bool> lits;
  auto add = [&](int mustVar) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Term> slots{pool[mustVar]};
      std::vector<int> idx(pool.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int i : idx)
        if (static_cast<int>(slots.size()) < k && i != mustVar) slots.push_back(pool[i]);
      const auto set = make_term_set(slots);
      if (lits.contains(set)) continue;
      lits[set] = coin(rng);
      return;
    }
  };
  for (int v = 0; v < shape.vars; ++v) add(v);
  const int extra = uniform_int(rng, 0, std::max(0, shape.max_literals - shape.vars));
  for (int i = 0; i < extra; ++i) add(uniform_int(rng, 0, shape.vars - 1));
  std::vector<Literal> out;
  for (const auto& [slots, positive] : lits) out.push_back(make_literal(positive, slots, k));
  return Conjunction(k, std::move(out));
}

ParamContext random_context(int k, const TermSet& params, const std::vector<int>& cells, Rng& rng) {
  ParamContext ctx;
  ctx.k = k;
  ctx.params = params;
  for (int t = 1; t <= std::min<int>(k - 1, static_cast<int>(params.size())); ++t)
    for (auto& s : term_subsets(params, t)) ctx.flat[std::move(s)] = uniform_int(rng, 0, cells.at(t - 1) - 1);
  if (static_cast<int>(params.size()) >= k)
    for (auto& s : term_subsets(params, k)) ctx.adj[std::move(s)] = coin(rng);
  return ctx;
}

KeislerBackend random_kernel_backend(int k, int maxCells, Rng& rng) {
  if (k == 2) return {random_step_graphon(uniform_int(rng, 1, maxCells), rng)};
  std::vector<int> cells(k - 1);
  for (auto& c : cells) c = uniform_int(rng, 1, maxCells);
  return {random_step_hypergraphon(k, cells, rng)};
}

std::vector<int> cell_counts(const KeislerBackend& backend) {
  if (const auto* g = std::get_if<StepGraphon>(&backend.model)) return {g->cells()};
  if (const auto* h = std::get_if<StepHypergraphon>(&backend.model)) {
    std::vector<int> out;
    for (int t = 1; t < h->arity(); ++t) out.push_back(h->cells(t));
    return out;
  }
  return {};
}

void VerifyReport::record(double residual, double tol) {
  if (tol < 0) tol = tolerance;
  ++checks;
  if (std::isnan(residual) || residual > tol) {
    if (passed || failures.size() < 5) failures.push_back("residual " + std::to_string(residual) + " at check " + std::to_string(checks));
    passed = false;
  }
  if (std::isnan(residual)) max_residual = residual;
  else if (!std::isnan(max_residual)) max_residual = std::max(max_residual, residual);
}

void VerifyReport::require(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  passed = false;
  failures.push_back(what);
}

json VerifyReport::to_json() const {
  return {{"suite", suite},     {"passed", passed},       {"checks", checks},
          {"tolerance", tolerance}, {"max_residual", max_residual}, {"failures", failures}, {"details", details}};
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"theorem-graphon", "theorem-hypergraph", "key",       "key3",
                                          "additivity",      "excellence",         "dissociation", "albert-values",
                                          "sumprod",         "associativity",      "threshold", "rado",
                                          "normalization"};
  return s;
}

VerifyReport run_verify(const std::string& suite, double tol, std::uint64_t seed) {
  if (!(tol > 0)) throw ModelError("tolerance must be positive");
  const auto& all = verify_suites();
  const auto it = std::find(all.begin(), all.end(), suite);
  if (it == all.end()) throw ModelError("unknown suite '" + suite + "'");
  VerifyReport rep;
  rep.suite = suite;
  rep.tolerance = tol;
  Rng rng = replica_stream(seed, static_cast<std::uint64_t>(it - all.begin()) + 1);
  if (suite == "albert-values") suite_albert_values(rep);
  else if (suite == "sumprod") suite_sumprod(rep, rng);
  else if (suite == "theorem-graphon") suite_theorem_graphon(rep, rng, seed);
  else if (suite == "theorem-hypergraph") suite_theorem_hypergraph(rep, rng, seed);
  else if (suite == "excellence") suite_excellence(rep, rng);
  else if (suite == "key") suite_key(rep, rng);
  else if (suite == "key3") suite_key3(rep, rng);
  else if (suite == "additivity") suite_additivity(rep, rng, tol);
  else if (suite == "dissociation") suite_dissociation(rep, rng);
  else if (suite == "associativity") suite_associativity(rep, rng);
  else if (suite == "threshold") suite_threshold(rep, seed);
  else if (suite == "rado") suite_rado(rep, seed);
  else suite_normalization(rep, rng);
  return rep;
}

}  // namespace gensample
