#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gensample/albert.hpp"
#include "gensample/core.hpp"
#include "gensample/graphon.hpp"
#include "gensample/hypergraphon.hpp"

namespace gensample {

/// A Keisler measure in one variable: Albert's μ_ν or the kernel measure μ_W.
struct KeislerBackend {
  std::variant<MixtureMeasure, StepGraphon, StepHypergraphon> model;

  int arity() const;
  std::string kind() const;  // "albert", "graphon", "hypergraphon"
  bool is_albert() const { return model.index() == 0; }
};

// ---- evaluation cores (shared with the Morley engine) ----

/// 2^-coins · Σ_i w_i Π_pos W(i,c) Π_neg (1 - W(i,d)); cellMask >= 0 keeps only cell i = cellMask.
double mu_w_basic_cells(const StepGraphon& w, int coins, std::span<const int> pos,
                        std::span<const int> neg, int cellMask = -1);

/// Argument of a kernel factor: a coordinate of the point being integrated, or a known cell.
struct FiberArg {
  bool own = false;
  int id = 0;
};

/// R^± over one k-set; args follow StepHypergraphon::local_subsets().
struct FiberLiteral {
  bool positive = true;
  std::vector<FiberArg> args;
};

/// Integrand of a hypergraphon fiber: own coordinates (with arity level and optional fixed
/// cell, -1 = free), independent fair coins, and kernel factors.
struct FiberSpec {
  int coins = 0;
  std::vector<int> own_levels;
  std::vector<int> own_fixed;
  std::vector<FiberLiteral> literals;
};

double hyper_fiber(const StepHypergraphon& w, const FiberSpec& spec);

// ---- measures on formulas with parameters ----

/// μ_W(⋀_A R(x,a) ∧ ⋀_B ¬R(x,b) ∧ ⋀_C R(x,c) ∧ ⋀_D ¬R(x,d)); A,B ⊆ M and C,D external.
double mu_w_basic(const StepGraphon& w, const TermSet& A, const TermSet& B, const TermSet& C,
                  const TermSet& D, const ParamContext& ctx, int cellMask = -1);

/// Fixed cells for coordinates of the integrated point: key {} is p, key C0 is q_{C0}.
using CellRestriction = std::map<TermSet, int>;

double mu_w_complete(const StepHypergraphon& w, const CompleteFormula& xi, const ParamContext& ctx,
                     const CellRestriction& restrict = {});

/// μ(φ(x, data)): every term of φ other than x and M-elements must be described in data.
double fiber_eval(const KeislerBackend& backend, const Conjunction& phi, int x,
                  const ParamContext& data);

/// Same fiber summed over the complete formulas consistent with φ.
double fiber_eval_by_completions(const StepHypergraphon& w, const Conjunction& phi, int x,
                                 const ParamContext& data);

// ---- disintegration and additivity ----

/// Point of S_y^*(M c̄) in the coin model: cell of y, answers to M-coin events m1.., and
/// adjacency to each context parameter (in ctx.params order).
struct KeyPoint {
  int cell = 0;
  std::vector<bool> coins;
  std::vector<bool> adj;
};
using KeyFunction = std::function<double(const KeyPoint&)>;

std::pair<double, double> check_key(const StepGraphon& w, int coinEvents, const KeyFunction& f,
                                    const ParamContext& ctx);

/// Point of S_x^*(MC) = S_x^♭ × S_C × S_x^*(C): cells of p and q_{C0}, coin answers for the
/// pairs (B0,C0) with B0 nonempty, and the external pattern r over (C choose k-1).
struct Key3Point {
  int p = 0;
  std::map<TermSet, int> q;
  std::map<CompletionKey, bool> coins;
  std::map<TermSet, bool> r;
};
using Key3Function = std::function<double(const Key3Point&)>;

std::pair<double, double> check_key3(const StepHypergraphon& w, const TermSet& B, const TermSet& C,
                                     const Key3Function& f, const ParamContext& ctx);

/// Returns (μ(Ξ∧γ) + μ(Ξ∧¬γ), μ(Ξ)); the extended formulas are summed over completions.
std::pair<double, double> check_additivity(const StepHypergraphon& w, const CompleteFormula& xi,
                                           const Literal& gamma, const ParamContext& ctx);

/// Σ_f Π a_i^{f(i)} (1-a_i)^{1-f(i)} over f: [k] -> {0,1}.
double sumprod_identity(std::span<const double> a);

}  // namespace gensample
