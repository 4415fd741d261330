#include "gensample/core.hpp"

#include <algorithm>
#include <set>

#include "gensample/error.hpp"

namespace gensample {

Term Term::var(int i) {
  if (i < 1) throw ModelError("variable index must be positive");
  return Term{TermKind::Variable, i, {}};
}

Term Term::ctx(std::string name) {
  if (name.empty()) throw ModelError("empty parameter name");
  return Term{TermKind::ContextParam, 0, std::move(name)};
}

Term Term::elem(std::string name) {
  if (name.empty()) throw ModelError("empty parameter name");
  return Term{TermKind::MElement, 0, std::move(name)};
}

std::string Term::str() const {
  return is_var() ? "x" + std::to_string(index) : name;
}

TermSet make_term_set(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

std::string join_terms(const TermSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].str();
  }
  return out;
}

std::string Literal::str() const {
  return (positive ? "R(" : "!R(") + join_terms(slots) + ")";
}

bool Literal::has_elem() const {
  return std::any_of(slots.begin(), slots.end(), [](const Term& t) { return t.is_elem(); });
}

bool Literal::has_var() const {
  return std::any_of(slots.begin(), slots.end(), [](const Term& t) { return t.is_var(); });
}

bool Literal::mentions(const Term& t) const {
  return std::binary_search(slots.begin(), slots.end(), t);
}

Literal make_literal(bool positive, std::vector<Term> slots, int k) {
  if (static_cast<int>(slots.size()) != k)
    throw ModelError("literal has " + std::to_string(slots.size()) + " slots, arity is " +
                     std::to_string(k));
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
    throw ModelError("repeated slot in literal");
  return Literal{std::move(slots), positive};
}

Conjunction::Conjunction(int k, std::vector<Literal> literals) : k_(k) {
  if (k < 2) throw ModelError("arity must be at least 2");
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  std::set<int> vars;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    const auto& l = literals[i];
    if (static_cast<int>(l.slots.size()) != k) throw ModelError("literal arity mismatch");
    // sorted by slots then sign, so the two signs of one slot set are adjacent
    if (i + 1 < literals.size() && literals[i + 1].slots == l.slots) inconsistent_ = true;
    for (const auto& t : l.slots)
      if (t.is_var()) vars.insert(t.index);
  }
  literals_ = std::move(literals);
  free_vars_.assign(vars.begin(), vars.end());
}

TermSet Conjunction::params() const {
  std::vector<Term> out;
  for (const auto& l : literals_)
    for (const auto& t : l.slots)
      if (!t.is_var()) out.push_back(t);
  return make_term_set(std::move(out));
}

Conjunction conjoin(const Conjunction& a, const Conjunction& b) {
  if (a.arity() != b.arity()) throw ModelError("arity mismatch in conjunction");
  auto lits = a.literals();
  lits.insert(lits.end(), b.literals().begin(), b.literals().end());
  return Conjunction(a.arity(), std::move(lits));
}

Conjunction conjoin(const Conjunction& a, const Literal& l) {
  auto lits = a.literals();
  lits.push_back(l);
  return Conjunction(a.arity(), std::move(lits));
}

std::vector<TermSet> term_subsets(const TermSet& s, int size) {
  std::vector<TermSet> out;
  if (size < 0 || size > static_cast<int>(s.size())) return out;
  for (const auto& idx : k_subsets(static_cast<int>(s.size()), size)) {
    TermSet sub;
    for (int i : idx) sub.push_back(s[i - 1]);
    out.push_back(std::move(sub));
  }
  if (size == 0) out.push_back({});
  return out;
}

std::vector<CompletionKey> completion_keys(const TermSet& B, const TermSet& C, int k) {
  std::vector<CompletionKey> keys;
  for (int t = 0; t <= k - 1; ++t)
    for (const auto& c0 : term_subsets(C, t))
      for (const auto& b0 : term_subsets(B, k - 1 - t)) keys.emplace_back(b0, c0);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<CompleteFormula> enumerate_completions(int x, const TermSet& B, const TermSet& C,
                                                   int k) {
  auto keys = completion_keys(B, C, k);
  if (keys.size() > 24) throw OverflowError("too many completion pairs: " + std::to_string(keys.size()));
  std::vector<CompleteFormula> out;
  const std::uint64_t total = std::uint64_t{1} << keys.size();
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    CompleteFormula f{k, x, B, C, {}};
    for (std::size_t i = 0; i < keys.size(); ++i) f.sign[keys[i]] = (mask >> i) & 1U;
    out.push_back(std::move(f));
  }
  return out;
}

Conjunction CompleteFormula::to_conjunction() const {
  std::vector<Literal> lits;
  for (const auto& [key, s] : sign) {
    std::vector<Term> slots{Term::var(x)};
    slots.insert(slots.end(), key.first.begin(), key.first.end());
    slots.insert(slots.end(), key.second.begin(), key.second.end());
    lits.push_back(make_literal(s, std::move(slots), k));
  }
  return Conjunction(k, std::move(lits));
}

int ParamContext::flat_cell(const TermSet& s) const {
  auto it = flat.find(s);
  if (it == flat.end()) throw ContextError("missing flat data for {" + join_terms(s) + "}");
  return it->second;
}

bool ParamContext::adjacent(const TermSet& s) const {
  auto it = adj.find(s);
  if (it == adj.end()) throw ContextError("missing adjacency data for {" + join_terms(s) + "}");
  return it->second;
}

bool ParamContext::has(const Term& t) const {
  return std::find(params.begin(), params.end(), t) != params.end();
}

void ParamContext::validate(const std::vector<int>& cells) const {
  auto sorted = make_term_set(params);
  if (sorted.size() != params.size()) throw ContextError("duplicate context parameter");
  for (int t = 1; t <= k - 1; ++t) {
    for (const auto& s : term_subsets(sorted, t)) {
      int c = flat_cell(s);
      if (t - 1 >= static_cast<int>(cells.size()) || c < 0 || c >= cells[t - 1])
        throw ContextError("flat cell out of range for {" + join_terms(s) + "}");
    }
  }
  for (const auto& s : term_subsets(sorted, k)) (void)adjacent(s);
}

LabeledHypergraph::LabeledHypergraph(int k_, int n_, std::vector<std::vector<int>> e)
    : k(k_), n(n_) {
  if (k < 2) throw ModelError("arity must be at least 2");
  if (n < 0) throw ModelError("negative vertex count");
  for (auto& edge : e) {
    std::sort(edge.begin(), edge.end());
    if (static_cast<int>(edge.size()) != k || std::adjacent_find(edge.begin(), edge.end()) != edge.end())
      throw ModelError("edge is not a k-subset");
    if (edge.front() < 1 || edge.back() > n) throw ModelError("edge vertex out of range");
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  edges = std::move(e);
}

bool LabeledHypergraph::has_edge(std::span<const int> e) const {
  std::vector<int> key(e.begin(), e.end());
  std::sort(key.begin(), key.end());
  return std::binary_search(edges.begin(), edges.end(), key);
}

std::uint64_t LabeledHypergraph::mask() const {
  if (binomial(n, k) > 64) throw OverflowError("edge mask needs C(n,k) <= 64");
  std::uint64_t m = 0;
  std::uint64_t bit = 0;
  for (const auto& s : k_subsets(n, k)) {
    if (std::binary_search(edges.begin(), edges.end(), s)) m |= std::uint64_t{1} << bit;
    ++bit;
  }
  return m;
}

LabeledHypergraph LabeledHypergraph::from_mask(int k, int n, std::uint64_t mask) {
  if (binomial(n, k) > 64) throw OverflowError("edge mask needs C(n,k) <= 64");
  std::vector<std::vector<int>> e;
  std::uint64_t bit = 0;
  for (auto& s : k_subsets(n, k)) {
    if ((mask >> bit) & 1U) e.push_back(std::move(s));
    ++bit;
  }
  return LabeledHypergraph(k, n, std::move(e));
}

LabeledHypergraph LabeledHypergraph::relabel(std::span<const int> sigma) const {
  if (static_cast<int>(sigma.size()) != n) throw ModelError("permutation size mismatch");
  std::vector<std::vector<int>> e;
  e.reserve(edges.size());
  for (const auto& edge : edges) {
    std::vector<int> img;
    for (int v : edge) img.push_back(sigma[v - 1]);
    e.push_back(std::move(img));
  }
  return LabeledHypergraph(k, n, std::move(e));
}

std::string render(const Conjunction& phi) {
  std::string out;
  for (std::size_t i = 0; i < phi.literals().size(); ++i) {
    if (i) out += '&';
    out += phi.literals()[i].str();
  }
  return out;
}

Conjunction graph_formula(const LabeledHypergraph& h) {
  std::vector<Literal> lits;
  for (const auto& s : k_subsets(h.n, h.k)) {
    std::vector<Term> slots;
    for (int v : s) slots.push_back(Term::var(v));
    lits.push_back(make_literal(h.has_edge(s), std::move(slots), h.k));
  }
  return Conjunction(h.k, std::move(lits));
}

Conjunction restrict_formula(const Conjunction& phi, std::span<const int> vars) {
  std::vector<Literal> kept;
  for (const auto& l : phi.literals()) {
    bool inside = std::all_of(l.slots.begin(), l.slots.end(), [&](const Term& t) {
      return !t.is_var() || std::find(vars.begin(), vars.end(), t.index) != vars.end();
    });
    if (inside) kept.push_back(l);
  }
  return Conjunction(phi.arity(), std::move(kept));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> small_subsets(int n, int maxSize) {
  std::vector<std::vector<int>> out;
  for (int t = 1; t <= maxSize; ++t) {
    auto level = k_subsets(n, t);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace gensample
