#pragma once

#include <cstdint>
#include <vector>

#include "gensample/core.hpp"
#include "gensample/keisler.hpp"

namespace gensample {

/// order[0] is sampled first (innermost); the last variable's fiber is evaluated directly.
struct EliminationOrder {
  std::vector<int> order;

  static EliminationOrder canonical(const Conjunction& phi) { return {phi.free_vars()}; }
};

/// Distribution over labeled k-hypergraphs on [n]; probs is indexed by edge mask
/// (bit i = i-th k-subset in lex order).
struct DistributionTable {
  int k = 2;
  int n = 0;
  std::vector<double> probs;

  double total() const;
  LabeledHypergraph graph(std::uint64_t mask) const { return LabeledHypergraph::from_mask(k, n, mask); }
};

double morley_power(const KeislerBackend& backend, const Conjunction& phi, const ParamContext& ctx,
                    const EliminationOrder& ord);
double morley_power(const KeislerBackend& backend, const Conjunction& phi);

/// (B1 ⊗ B2) ⊗ B3 or B1 ⊗ (B2 ⊗ B3). The left factor of ⊗ is integrated last.
enum class Bracketing { Left, Right };

/// blocks[i] lists its variables, first sampled first. backends has one entry per block, or a
/// single entry shared by all blocks. Kernels of the same kind are put on a common cell partition.
double morley_blocked(const std::vector<KeislerBackend>& backends, const Conjunction& phi,
                      const ParamContext& ctx, const std::vector<std::vector<int>>& blocks,
                      Bracketing bracketing);

struct Spread {
  double min = 0.0;
  double max = 0.0;
  double spread() const { return max - min; }
};

Spread permutation_spread(const KeislerBackend& backend, const Conjunction& phi,
                          const ParamContext& ctx = {});

/// |P(θ∧ψ) - P(θ)P(ψ)| under ascending variable order.
double dissociation_gap(const KeislerBackend& backend, const Conjunction& theta,
                        const Conjunction& psi, const ParamContext& ctx = {});

DistributionTable pushforward_distribution(const KeislerBackend& backend, int n);

}  // namespace gensample
