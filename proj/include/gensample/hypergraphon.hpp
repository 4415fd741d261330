#pragma once

#include <Eigen/Dense>
#include <functional>

#include "gensample/core.hpp"
#include "gensample/graphon.hpp"
#include "gensample/rng.hpp"

namespace gensample {

/// Step k-hypergraphon. Arguments are cell indices, one per nonempty subset L of [k] with
/// |L| <= k-1, ordered by size then lex (local_subsets()); the cell of L lives at arity |L|.
class StepHypergraphon {
 public:
  using Assignment = std::vector<int>;
  using Entry = std::pair<Assignment, double>;

  /// weights[t-1] are the arity-t cell masses. Entries may cover any orbit representatives;
  /// the table is completed by Sym(k) symmetry.
  StepHypergraphon(int k, std::vector<Eigen::VectorXd> weights, const std::vector<Entry>& entries);

  static StepHypergraphon from_function(int k, std::vector<Eigen::VectorXd> weights,
                                        const std::function<double(std::span<const int>)>& f);
  static StepHypergraphon constant(int k, double p);

  int arity() const { return k_; }
  int cells(int level) const { return static_cast<int>(weights_[level - 1].size()); }
  const Eigen::VectorXd& weights(int level) const { return weights_[level - 1]; }
  const std::vector<std::vector<int>>& local_subsets() const { return local_; }
  int level_of(int localIndex) const { return static_cast<int>(local_[localIndex].size()); }

  std::size_t table_size() const { return table_.size(); }
  std::size_t index_of(std::span<const int> a) const;
  Assignment decode(std::size_t index) const;
  double value(std::span<const int> a) const { return table_[index_of(a)]; }
  double value_at(std::size_t index) const { return table_[index]; }

  /// a∘σ for σ given as an image list over [k] (0-based).
  Assignment permute(std::span<const int> a, std::span<const int> sigma) const;

 private:
  StepHypergraphon(int k, std::vector<Eigen::VectorXd> weights);
  void check_symmetry_sample() const;

  int k_;
  std::vector<Eigen::VectorXd> weights_;
  std::vector<std::vector<int>> local_;
  std::vector<std::size_t> radix_;   // stride per local subset; last is fastest
  std::vector<std::vector<int>> perms_;         // all σ in Sym(k)
  std::vector<std::vector<int>> subset_image_;  // [σ][i] = index of σ(L_i)
  std::vector<double> table_;
};

StepHypergraphon as_hypergraphon(const StepGraphon& w);
StepHypergraphon random_step_hypergraphon(int k, const std::vector<int>& cells, Rng& rng);

/// Edge indicators over the lex-ordered k-subsets of [n].
std::vector<char> sample_hypergraph_edges(const StepHypergraphon& w, int n, Rng& rng);
LabeledHypergraph sample_hypergraph(const StepHypergraphon& w, int n, std::uint64_t seed);

/// Exact sum over all cell assignments of P_n; guarded at 1e7 assignments.
double hyper_density_exact(const StepHypergraphon& w, const LabeledHypergraph& h);
Estimate hyper_density_mc(const StepHypergraphon& w, const LabeledHypergraph& h,
                          std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace gensample
