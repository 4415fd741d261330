#pragma once

#include <span>
#include <string>
#include <vector>

#include "gensample/core.hpp"
#include "gensample/rng.hpp"

namespace gensample {

struct Atom {
  double t = 0.0;
  double w = 0.0;
};

struct BetaComponent {
  double alpha = 1.0;
  double beta = 1.0;
  double w = 0.0;
};

/// Probability measure on [0,1]: point masses plus Beta densities.
class MixtureMeasure {
 public:
  MixtureMeasure(std::vector<Atom> atoms, std::vector<BetaComponent> betas);

  static MixtureMeasure dirac(double r);
  /// r·δ1 + (1-r)·δ0
  static MixtureMeasure two_point(double r);
  static MixtureMeasure beta(double alpha, double beta);
  static MixtureMeasure lebesgue() { return beta(1.0, 1.0); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<BetaComponent>& betas() const { return betas_; }

  /// ∫ t^a (1-t)^b dν
  double moment(int a, int b) const;
  double sample(Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<BetaComponent> betas_;
  std::vector<double> component_weights_;
};

/// ν-measure of "adjacent to every positive, to no negative" over distinct parameters.
double mu_nu_eval(const MixtureMeasure& nu, std::vector<std::string> positives,
                  std::vector<std::string> negatives);

/// Edge indicators over the lex-ordered pairs of [n], drawn vertex by vertex as below.
std::vector<char> albert_sample_edges(const MixtureMeasure& nu, int n, Rng& rng);

/// Vertex l draws t_l ~ ν and joins each earlier vertex with probability t_l.
/// Draws are sequential, so a smaller n with the same seed gives an induced prefix.
LabeledHypergraph albert_generic_sample(const MixtureMeasure& nu, int n, std::uint64_t seed);

/// Closed-form Morley power; order[0] is sampled first.
double albert_morley(const MixtureMeasure& nu, const Conjunction& phi, std::span<const int> order);

}  // namespace gensample
