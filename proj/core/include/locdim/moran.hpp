#pragma once

#include <string>
#include <vector>

#include "locdim/measure.hpp"

namespace locdim {

// Self-similar construction data: m branches with contraction ratios r_i and
// branching weights p_i.  An optional start vector turns the constants into a
// depth-dependent schedule converging geometrically (ratio 1/2 per level)
// to the limit values.
struct SelfSimilarSpec {
  std::vector<double> ratios;
  std::vector<double> weights;
  std::vector<double> start_weights;  // empty: constant weights
  std::vector<double> start_ratios;   // empty: constant ratios

  int branches() const { return static_cast<int>(ratios.size()); }
  void validate() const;
  std::vector<double> weights_at_level(int n) const;
  std::vector<double> ratios_at_level(int n) const;
};

SelfSimilarSpec cantor_spec(double ratio = 1.0 / 3.0, double p0 = 0.5);

// Root of sum_i p_i^q r_i^{-tau} = 1 (limit values), solved by bisection to
// 1e-12.  The left side is strictly increasing in tau, so the root is unique.
double solve_tau(const SelfSimilarSpec& spec, double q, double tol = 1e-12);

// Residual of the defining equation at (q, tau); handy for oracle checks.
double moment_equation(const SelfSimilarSpec& spec, double q, double tau);

// Information dimension sum p log p / sum p log r.
double dim_formula(const SelfSimilarSpec& spec);

// Range of log p_i / log r_i over the branches.
std::pair<double, double> alpha_range(const SelfSimilarSpec& spec);

struct SpectrumPoint {
  double alpha = 0;
  double value = 0;    // f(alpha) = inf_q (q*alpha - tau(q))
  double arg_q = 0;
  bool boundary = false;
};

// Multifractal spectrum via the Legendre transform of tau(q), evaluated by
// golden-section search in q (tau is concave, so q*alpha - tau(q) is convex).
std::vector<SpectrumPoint> exact_spectrum(const SelfSimilarSpec& spec,
                                          const std::vector<double>& alpha_grid,
                                          double q_limit = 60.0);

// Build the associated cell tree on [0, 1]: children scaled by r_i, placed
// left to right with equal gaps (the outermost children touch the parent's
// endpoints), carrying mass fractions p_i.
MeasureTree build_selfsimilar_tree(const SelfSimilarSpec& spec, int depth);

// Structural audit of a cell tree against the construction axioms: nesting,
// separation, inner balls, vanishing diameters, bounded parent/child ratio,
// diameter regularity and the diameter-cut sanity.  Each entry reports a
// pass flag and a short witness string on failure.
struct MoranCheck {
  bool pass = true;
  std::string witness;
};

struct MoranValidation {
  MoranCheck nesting;             // children inside parents
  MoranCheck separation;          // siblings strongly separated (positive gaps)
  MoranCheck inner_ball;          // cells contain a comparably sized ball
  MoranCheck shrinking;           // max diameter per level decreases to 0
  MoranCheck bounded_ratio;       // parent/child diameter ratio bounded
  MoranCheck diameter_regular;    // diam tracks the nominal contraction product
  MoranCheck cut_partition;       // diameter cuts produce disjoint covers
  double C0 = 0;                  // measured inner-ball constant
  double C1 = 0;                  // measured parent/child ratio bound
  bool all() const;
};

MoranValidation validate_moran(const MeasureTree& tree);

// Leaves whose symbol paths are typical for the weight vector: along every
// prefix the empirical branch counts stay within `band` of the expected
// n * p_i.  Sampling is seeded and rejection-based; distinct leaves only.
std::vector<int> sample_typical_leaves(const MeasureTree& tree,
                                       const std::vector<double>& weights, int count,
                                       double band, std::uint64_t seed);

}  // namespace locdim
