#include "gensample/keisler.hpp"

#include <algorithm>
#include <cmath>

#include "gensample/error.hpp"

namespace gensample {

int KeislerBackend::arity() const {
  if (const auto* h = std::get_if<StepHypergraphon>(&model)) return h->arity();
  return 2;
}

std::string KeislerBackend::kind() const {
  switch (model.index()) {
    case 0: return "albert";
    case 1: return "graphon";
    default: return "hypergraphon";
  }
}

double mu_w_basic_cells(const StepGraphon& w, int coins, std::span<const int> pos,
                        std::span<const int> neg, int cellMask) {
  double total = 0.0;
  for (int i = 0; i < w.cells(); ++i) {
    if (cellMask >= 0 && i != cellMask) continue;
    double p = w.weights()[i];
    for (int c : pos) p *= w(i, c);
    for (int d : neg) p *= 1.0 - w(i, d);
    total += p;
  }
  return std::ldexp(total, -coins);
}

double hyper_fiber(const StepHypergraphon& w, const FiberSpec& spec) {
  const std::size_t nOwn = spec.own_levels.size();
  std::vector<int> fixed = spec.own_fixed;
  if (fixed.empty()) fixed.assign(nOwn, -1);
  if (fixed.size() != nOwn) throw ModelError("fiber spec: fixed cells do not match own coordinates");
  std::vector<char> used(nOwn, 0);
  for (const auto& l : spec.literals) {
    if (l.args.size() != w.local_subsets().size()) throw ModelError("fiber spec: wrong argument count");
    for (const auto& a : l.args)
      if (a.own) used.at(a.id) = 1;
  }
  double scale = std::ldexp(1.0, -spec.coins);
  std::vector<int> cur(nOwn, 0);
  std::vector<int> free;
  for (std::size_t i = 0; i < nOwn; ++i) {
    if (fixed[i] >= 0) {
      cur[i] = fixed[i];
      scale *= w.weights(spec.own_levels[i])[fixed[i]];
    } else if (used[i]) {
      free.push_back(static_cast<int>(i));
    }
  }
  std::vector<int> a(w.local_subsets().size());
  double total = 0.0;
  while (true) {
    double p = 1.0;
    for (int i : free) p *= w.weights(spec.own_levels[i])[cur[i]];
    for (const auto& l : spec.literals) {
      for (std::size_t j = 0; j < a.size(); ++j) a[j] = l.args[j].own ? cur[l.args[j].id] : l.args[j].id;
      const double v = w.value(a);
      p *= l.positive ? v : 1.0 - v;
    }
    total += p;
    int i = static_cast<int>(free.size()) - 1;
    while (i >= 0 && ++cur[free[i]] == w.cells(spec.own_levels[free[i]])) cur[free[i--]] = 0;
    if (i < 0) break;
  }
  return scale * total;
}

namespace {

bool intersects(const TermSet& a, const TermSet& b) {
  for (const auto& t : a)
    if (std::binary_search(b.begin(), b.end(), t)) return true;
  return false;
}

int singleton_cell(const ParamContext& ctx, const Term& t) {
  if (!ctx.has(t)) throw ContextError("unknown context param " + t.str());
  return ctx.flat_cell({t});
}

TermSet without(const TermSet& s, const Term& t) {
  TermSet out;
  for (const auto& u : s)
    if (u != t) out.push_back(u);
  return out;
}

// Literals of phi split by whether they involve x; x-free ones must be decided by data.
struct FiberSplit {
  std::vector<Literal> with_x;
  bool others_hold = true;
};

FiberSplit split_fiber(const Conjunction& phi, const Term& x, const ParamContext& data) {
  FiberSplit s;
  for (const auto& l : phi.literals()) {
    for (const auto& t : l.slots)
      if (t != x && !t.is_elem() && !data.has(t)) throw ContextError("unknown context param " + t.str());
    if (l.mentions(x)) {
      s.with_x.push_back(l);
      continue;
    }
    if (l.has_elem()) throw ContextError("literal " + l.str() + " without the fiber variable involves M");
    if (data.adjacent(l.slots) != l.positive) s.others_hold = false;
  }
  return s;
}

}  // namespace

double mu_w_basic(const StepGraphon& w, const TermSet& A, const TermSet& B, const TermSet& C,
                  const TermSet& D, const ParamContext& ctx, int cellMask) {
  std::vector<int> pos, neg;
  for (const auto& c : C) pos.push_back(singleton_cell(ctx, c));
  for (const auto& d : D) neg.push_back(singleton_cell(ctx, d));
  if (intersects(A, B) || intersects(C, D)) return 0.0;
  return mu_w_basic_cells(w, static_cast<int>(A.size() + B.size()), pos, neg, cellMask);
}

double mu_w_complete(const StepHypergraphon& w, const CompleteFormula& xi, const ParamContext& ctx,
                     const CellRestriction& restrict) {
  const int k = w.arity();
  if (xi.k != k) throw ModelError("complete formula arity differs from kernel arity");
  const auto keys = completion_keys(xi.B, xi.C, k);
  if (xi.sign.size() != keys.size() ||
      !std::all_of(keys.begin(), keys.end(), [&](const CompletionKey& key) { return xi.sign.count(key) > 0; }))
    throw ModelError("complete formula sign map is not total");

  FiberSpec spec;
  std::map<TermSet, int> own;
  own[{}] = 0;
  spec.own_levels.push_back(1);
  for (int t = 1; t <= k - 2; ++t)
    for (const auto& c0 : term_subsets(xi.C, t)) {
      own[c0] = static_cast<int>(spec.own_levels.size());
      spec.own_levels.push_back(t + 1);
    }
  spec.own_fixed.assign(spec.own_levels.size(), -1);
  for (const auto& [key, cell] : restrict) {
    auto it = own.find(key);
    if (it == own.end()) throw ModelError("cell restriction on unknown coordinate {" + join_terms(key) + "}");
    if (cell < 0 || cell >= w.cells(spec.own_levels[it->second])) throw ModelError("restricted cell out of range");
    spec.own_fixed[it->second] = cell;
  }
  for (const auto& key : keys)
    if (!key.first.empty()) ++spec.coins;

  const auto& local = w.local_subsets();
  for (const auto& c0 : term_subsets(xi.C, k - 1)) {
    FiberLiteral lit{xi.sign.at({TermSet{}, c0}), {}};
    // position 1 is x, positions 2..k are the sorted elements of C0
    for (const auto& I : local) {
      TermSet sub;
      for (int i : I)
        if (i != 1) sub.push_back(c0[i - 2]);
      if (I.front() == 1) lit.args.push_back({true, own.at(sub)});
      else lit.args.push_back({false, ctx.flat_cell(sub)});
    }
    spec.literals.push_back(std::move(lit));
  }
  return hyper_fiber(w, spec);
}

double fiber_eval(const KeislerBackend& backend, const Conjunction& phi, int x,
                  const ParamContext& data) {
  if (phi.arity() != backend.arity()) throw ModelError("formula arity differs from backend arity");
  const Term xv = Term::var(x);
  if (phi.inconsistent()) return 0.0;
  const auto split = split_fiber(phi, xv, data);
  if (!split.others_hold) return 0.0;

  if (const auto* nu = std::get_if<MixtureMeasure>(&backend.model)) {
    std::vector<std::string> pos, neg;
    for (const auto& l : split.with_x) {
      const Term& other = l.slots[0] == xv ? l.slots[1] : l.slots[0];
      (l.positive ? pos : neg).push_back(other.str());
    }
    return mu_nu_eval(*nu, std::move(pos), std::move(neg));
  }

  if (const auto* w = std::get_if<StepGraphon>(&backend.model)) {
    std::vector<Term> A, B, C, D;
    for (const auto& l : split.with_x) {
      const Term& other = l.slots[0] == xv ? l.slots[1] : l.slots[0];
      if (other.is_elem()) (l.positive ? A : B).push_back(other);
      else (l.positive ? C : D).push_back(other);
    }
    return mu_w_basic(*w, make_term_set(A), make_term_set(B), make_term_set(C), make_term_set(D), data);
  }

  const auto& w = std::get<StepHypergraphon>(backend.model);
  FiberSpec spec;
  std::map<TermSet, int> own;
  for (const auto& l : split.with_x) {
    if (l.has_elem()) {
      ++spec.coins;
      continue;
    }
    FiberLiteral lit{l.positive, {}};
    for (const auto& I : w.local_subsets()) {
      TermSet sub;
      for (int i : I) sub.push_back(l.slots[i - 1]);
      if (std::binary_search(sub.begin(), sub.end(), xv)) {
        auto key = without(sub, xv);
        auto it = own.find(key);
        if (it == own.end()) {
          it = own.emplace(key, static_cast<int>(spec.own_levels.size())).first;
          spec.own_levels.push_back(static_cast<int>(sub.size()));
        }
        lit.args.push_back({true, it->second});
      } else {
        lit.args.push_back({false, data.flat_cell(sub)});
      }
    }
    spec.literals.push_back(std::move(lit));
  }
  return hyper_fiber(w, spec);
}

double fiber_eval_by_completions(const StepHypergraphon& w, const Conjunction& phi, int x,
                                 const ParamContext& data) {
  const Term xv = Term::var(x);
  if (phi.inconsistent()) return 0.0;
  const auto split = split_fiber(phi, xv, data);
  if (!split.others_hold) return 0.0;
  std::vector<Term> bs, cs;
  std::vector<std::pair<CompletionKey, bool>> required;
  for (const auto& l : split.with_x) {
    std::vector<Term> b0, c0;
    for (const auto& t : l.slots) {
      if (t == xv) continue;
      (t.is_elem() ? b0 : c0).push_back(t);
    }
    bs.insert(bs.end(), b0.begin(), b0.end());
    cs.insert(cs.end(), c0.begin(), c0.end());
    required.push_back({{make_term_set(b0), make_term_set(c0)}, l.positive});
  }
  double total = 0.0;
  for (const auto& xi : enumerate_completions(x, make_term_set(bs), make_term_set(cs), w.arity())) {
    const bool ok = std::all_of(required.begin(), required.end(),
                                [&](const auto& r) { return xi.sign.at(r.first) == r.second; });
    if (ok) total += mu_w_complete(w, xi, data);
  }
  return total;
}

std::pair<double, double> check_key(const StepGraphon& w, int coinEvents, const KeyFunction& f,
                                    const ParamContext& ctx) {
  const int n = static_cast<int>(ctx.params.size());
  if (coinEvents > 16 || n > 16) throw OverflowError("check_key: too many coins or parameters");
  std::vector<Term> names;
  for (int j = 1; j <= coinEvents; ++j) names.push_back(Term::elem("m" + std::to_string(j)));
  std::vector<int> cell;
  for (const auto& c : ctx.params) cell.push_back(singleton_cell(ctx, c));

  KeyPoint pt;
  pt.coins.assign(coinEvents, false);
  pt.adj.assign(n, false);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < w.cells(); ++i) {
    pt.cell = i;
    for (unsigned cm = 0; cm < (1U << coinEvents); ++cm) {
      std::vector<Term> A, B;
      for (int j = 0; j < coinEvents; ++j) {
        pt.coins[j] = (cm >> j) & 1U;
        (pt.coins[j] ? A : B).push_back(names[j]);
      }
      for (unsigned am = 0; am < (1U << n); ++am) {
        std::vector<Term> C, D;
        double ws = 1.0;
        for (int j = 0; j < n; ++j) {
          pt.adj[j] = (am >> j) & 1U;
          (pt.adj[j] ? C : D).push_back(ctx.params[j]);
          ws *= pt.adj[j] ? w(i, cell[j]) : 1.0 - w(i, cell[j]);
        }
        const double fv = f(pt);
        lhs += fv * mu_w_basic(w, make_term_set(A), make_term_set(B), make_term_set(C), make_term_set(D), ctx, i);
        rhs += w.weights()[i] * std::ldexp(1.0, -coinEvents) * fv * ws;
      }
    }
  }
  return {lhs, rhs};
}

std::pair<double, double> check_key3(const StepHypergraphon& w, const TermSet& B, const TermSet& C,
                                     const Key3Function& f, const ParamContext& ctx) {
  const int k = w.arity();
  std::vector<TermSet> qkeys;
  for (int t = 1; t <= k - 2; ++t)
    for (auto& c0 : term_subsets(C, t)) qkeys.push_back(std::move(c0));
  std::vector<CompletionKey> coinKeys;
  for (const auto& key : completion_keys(B, C, k))
    if (!key.first.empty()) coinKeys.push_back(key);
  const auto rkeys = term_subsets(C, k - 1);
  if (coinKeys.size() + rkeys.size() > 20) throw OverflowError("check_key3: too many coin/pattern bits");

  // mixed-radix walk over p, q cells
  std::vector<int> levels{1};
  for (const auto& q : qkeys) levels.push_back(static_cast<int>(q.size()) + 1);
  std::vector<int> cur(levels.size(), 0);
  const auto& local = w.local_subsets();
  double lhs = 0.0, rhs = 0.0;
  Key3Point pt;
  while (true) {
    pt.p = cur[0];
    double cellWeight = w.weights(1)[cur[0]];
    CellRestriction restrict{{TermSet{}, cur[0]}};
    for (std::size_t i = 0; i < qkeys.size(); ++i) {
      pt.q[qkeys[i]] = cur[i + 1];
      restrict[qkeys[i]] = cur[i + 1];
      cellWeight *= w.weights(levels[i + 1])[cur[i + 1]];
    }
    for (unsigned cm = 0; cm < (1U << coinKeys.size()); ++cm) {
      for (std::size_t j = 0; j < coinKeys.size(); ++j) pt.coins[coinKeys[j]] = (cm >> j) & 1U;
      for (unsigned rm = 0; rm < (1U << rkeys.size()); ++rm) {
        CompleteFormula xi{k, 1, B, C, {}};
        for (const auto& [key, s] : pt.coins) xi.sign[key] = s;
        double wdag = 1.0;
        for (std::size_t j = 0; j < rkeys.size(); ++j) {
          const bool s = (rm >> j) & 1U;
          pt.r[rkeys[j]] = s;
          xi.sign[{TermSet{}, rkeys[j]}] = s;
          std::vector<int> a;
          for (const auto& I : local) {
            TermSet sub;
            for (int i : I)
              if (i != 1) sub.push_back(rkeys[j][i - 2]);
            if (I.front() != 1) a.push_back(ctx.flat_cell(sub));
            else if (sub.empty()) a.push_back(pt.p);
            else a.push_back(pt.q.at(sub));
          }
          const double v = w.value(a);
          wdag *= s ? v : 1.0 - v;
        }
        const double fv = f(pt);
        lhs += fv * mu_w_complete(w, xi, ctx, restrict);
        rhs += cellWeight * std::ldexp(1.0, -static_cast<int>(coinKeys.size())) * fv * wdag;
      }
    }
    int i = static_cast<int>(cur.size()) - 1;
    while (i >= 0 && ++cur[i] == w.cells(levels[i])) cur[i--] = 0;
    if (i < 0) break;
  }
  return {lhs, rhs};
}

std::pair<double, double> check_additivity(const StepHypergraphon& w, const CompleteFormula& xi,
                                           const Literal& gamma, const ParamContext& ctx) {
  const Term xv = Term::var(xi.x);
  if (!gamma.mentions(xv)) throw ModelError("additivity literal must involve the formula's variable");
  std::vector<Term> d, e;
  for (const auto& t : gamma.slots) {
    if (t == xv) continue;
    if (t.is_var()) throw ModelError("additivity literal may only involve x and parameters");
    (t.is_elem() ? d : e).push_back(t);
  }
  const CompletionKey gkey{make_term_set(d), make_term_set(e)};
  std::vector<Term> b2 = xi.B, c2 = xi.C;
  b2.insert(b2.end(), d.begin(), d.end());
  c2.insert(c2.end(), e.begin(), e.end());
  CompleteFormula ext{xi.k, xi.x, make_term_set(b2), make_term_set(c2), xi.sign};
  std::vector<CompletionKey> fresh;
  for (const auto& key : completion_keys(ext.B, ext.C, xi.k))
    if (!xi.sign.contains(key)) fresh.push_back(key);
  if (fresh.size() > 24) throw OverflowError("check_additivity: too many new completion keys");
  double withPos = 0.0, withNeg = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << fresh.size()); ++m) {
    for (std::size_t i = 0; i < fresh.size(); ++i) ext.sign[fresh[i]] = (m >> i) & 1U;
    (ext.sign.at(gkey) ? withPos : withNeg) += mu_w_complete(w, ext, ctx);
  }
  return {withPos + withNeg, mu_w_complete(w, xi, ctx)};
}

double sumprod_identity(std::span<const double> a) {
  const std::size_t k = a.size();
  if (k > 24) throw OverflowError("sumprod_identity: too many factors");
  double total = 0.0;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << k); ++f) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= ((f >> i) & 1U) ? a[i] : 1.0 - a[i];
    total += p;
  }
  return total;
}

}  // namespace gensample
