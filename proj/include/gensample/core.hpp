#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gensample {

enum class TermKind : std::uint8_t { Variable, ContextParam, MElement };

/// A slot of a literal: a free variable x_i, an external parameter, or an element of M.
/// Parameter names are full tokens ("c1", "mb").
struct Term {
  TermKind kind = TermKind::Variable;
  int index = 0;
  std::string name;

  static Term var(int i);
  static Term ctx(std::string name);
  static Term elem(std::string name);

  bool is_var() const { return kind == TermKind::Variable; }
  bool is_ctx() const { return kind == TermKind::ContextParam; }
  bool is_elem() const { return kind == TermKind::MElement; }
  std::string str() const;

  auto operator<=>(const Term&) const = default;
};

/// Sorted, duplicate-free set of terms.
using TermSet = std::vector<Term>;

TermSet make_term_set(std::vector<Term> terms);
std::string join_terms(const TermSet& s);  // "c1,c2"

struct Literal {
  TermSet slots;
  bool positive = true;

  std::string str() const;
  bool has_elem() const;
  bool has_var() const;
  bool mentions(const Term& t) const;

  auto operator<=>(const Literal&) const = default;
};

/// Validates uniformity (exactly k distinct slots) and sorts the slots.
Literal make_literal(bool positive, std::vector<Term> slots, int k);

class Conjunction {
 public:
  Conjunction() = default;
  Conjunction(int k, std::vector<Literal> literals);

  int arity() const { return k_; }
  const std::vector<Literal>& literals() const { return literals_; }
  const std::vector<int>& free_vars() const { return free_vars_; }
  bool inconsistent() const { return inconsistent_; }
  bool empty() const { return literals_.empty(); }

  /// Parameters (non-variable terms) occurring anywhere.
  TermSet params() const;

  bool operator==(const Conjunction& o) const { return k_ == o.k_ && literals_ == o.literals_; }

 private:
  int k_ = 2;
  std::vector<Literal> literals_;
  std::vector<int> free_vars_;
  bool inconsistent_ = false;
};

Conjunction conjoin(const Conjunction& a, const Conjunction& b);
Conjunction conjoin(const Conjunction& a, const Literal& l);

/// Index pair (B0, C0) of a complete formula: B0 ⊆ M-elements, C0 ⊆ external parameters.
using CompletionKey = std::pair<TermSet, TermSet>;

struct CompleteFormula {
  int k = 2;
  int x = 1;
  TermSet B;
  TermSet C;
  std::map<CompletionKey, bool> sign;

  /// The literal R^ε(x, B0, C0) for every pair.
  Conjunction to_conjunction() const;
};

/// All (B0, C0) with B0 ⊆ B, C0 ⊆ C and |B0|+|C0| = k-1, in a fixed order.
std::vector<CompletionKey> completion_keys(const TermSet& B, const TermSet& C, int k);
std::vector<CompleteFormula> enumerate_completions(int x, const TermSet& B, const TermSet& C, int k);

/// External data: a flat cell for each small subset and adjacency for each k-subset.
/// Params are usually context parameters; fiber evaluation also places realized variables here.
struct ParamContext {
  int k = 2;
  TermSet params;
  std::map<TermSet, int> flat;
  std::map<TermSet, bool> adj;

  int flat_cell(const TermSet& s) const;  // throws ContextError
  bool adjacent(const TermSet& s) const;  // throws ContextError
  bool has(const Term& t) const;
  /// Totality and cell ranges; cells[t-1] is the cell count at arity t.
  void validate(const std::vector<int>& cells) const;
};

struct LabeledHypergraph {
  int k = 2;
  int n = 0;
  std::vector<std::vector<int>> edges;  // sorted k-subsets of {1..n}, sorted

  LabeledHypergraph() = default;
  LabeledHypergraph(int k, int n, std::vector<std::vector<int>> edges);

  bool has_edge(std::span<const int> e) const;
  /// Bit i set iff the i-th k-subset of [n] in lex order is an edge. Needs C(n,k) <= 64.
  std::uint64_t mask() const;
  static LabeledHypergraph from_mask(int k, int n, std::uint64_t mask);
  LabeledHypergraph relabel(std::span<const int> sigma) const;  // vertex v -> sigma[v-1]

  bool operator==(const LabeledHypergraph&) const = default;
};

Conjunction parse_formula(const std::string& text, int k);
std::string render(const Conjunction& phi);
Conjunction graph_formula(const LabeledHypergraph& h);
Conjunction restrict_formula(const Conjunction& phi, std::span<const int> vars);

using CanonicalForm = std::vector<std::vector<int>>;
/// Brute force over all n! relabelings; n <= 8.
CanonicalForm canonical_form(const LabeledHypergraph& h);
/// Individualization-refinement labeling with twin pruning; any n.
CanonicalForm canonical_form_refined(const LabeledHypergraph& h);

std::uint64_t binomial(int n, int k);
/// k-subsets of {1..n} in lex order.
std::vector<std::vector<int>> k_subsets(int n, int k);
/// Nonempty subsets of {1..n} with size <= maxSize, ordered by size then lex.
std::vector<std::vector<int>> small_subsets(int n, int maxSize);
/// Subsets of a term set with the given size, lex order over positions.
std::vector<TermSet> term_subsets(const TermSet& s, int size);

}  // namespace gensample
