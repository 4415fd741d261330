#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gensample/core.hpp"
#include "gensample/rng.hpp"

namespace gensample {

/// Piecewise-constant graphon: cell masses and a symmetric m x m value table.
class StepGraphon {
 public:
  StepGraphon(Eigen::VectorXd weights, Eigen::MatrixXd values);

  int cells() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }

  static StepGraphon constant(double p);

 private:
  Eigen::VectorXd weights_;
  Eigen::MatrixXd values_;
};

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Edge indicators over the lex-ordered pairs of [n].
std::vector<char> sample_graph_edges(const StepGraphon& w, int n, Rng& rng);
LabeledHypergraph sample_graph(const StepGraphon& w, int n, std::uint64_t seed);

double density_exact(const StepGraphon& w, const LabeledHypergraph& h);
Estimate density_mc(const StepGraphon& w, const LabeledHypergraph& h, std::uint64_t samples,
                    std::uint64_t seed, unsigned threads = 1);

/// Random kernel with m cells; Dirichlet(1) weights, uniform values.
StepGraphon random_step_graphon(int m, Rng& rng);

}  // namespace gensample
