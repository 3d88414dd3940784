#pragma once

#include <cstdint>
#include <vector>

#include "locdim/measure.hpp"

namespace locdim {

struct PorosityQuery {
  Point x;
  double r = 1.0;
  int k = 1;              // number of pairwise orthogonal holes (Euclidean)
  double epsilon = 0;     // mass threshold (measure mode)
  std::uint64_t seed = 0; // frame sampling
  int frames = 100;       // random orthonormal frames for k >= 2
};

struct PorosityResult {
  double rho = 0;
  std::vector<Point> holes;  // witnessing hole centers
  bool exact = true;         // false: sampled-direction lower bound
};

// Largest relative hole size: sup of rho such that k orthogonal balls
// B(y_i, rho*r) avoid the set (or are epsilon-light for the measure) while
// rho*r + |x - y_i| <= r keeps them inside B(x, r).
PorosityResult por_set(const std::vector<Point>& A, const MetricSpace& space,
                       const PorosityQuery& q);
PorosityResult por_measure(const Measure& mu, const PorosityQuery& q);

// Dimension bound d - k + c / (-log(1 - 2 rho)); requires rho < 1/2.
double kpor_bound(double rho, int k, int d, double c);

// Metric-space bound s - c * rho^s for 1-porosity.
double metric_poro_bound(double s, double rho, double c);

struct CoverCount {
  int count = 0;
  double bound_shape = 0;  // (1 - 2 rho)^(k - d), the predicted trend factor
};

// Greedy cover of the point set by balls of radius (1 - 2 rho) * r.
CoverCount porous_cover_count(const std::vector<Point>& A, const MetricSpace& space,
                              const Point& x0, double r, double rho, int k, int d);

struct Cone {
  std::vector<std::vector<double>> V;  // orthonormal basis of a (d-k)-subspace
  std::vector<double> theta;           // unit vector
  double alpha = 0.5;
  std::vector<double> apex;
  double r = 1.0;
};

// mu( cone around V minus the theta half-cone ) / mu( B(apex, r) ) by direct
// membership tests on the atoms.
double cone_mass_ratio(const AtomicMeasure& mu, const Cone& cone);

struct TradeoffMember {
  double lambda = 0;
  double rho = 0;
  double dim_estimate = 0;
  double bound = 0;  // with the fitted constant
};

struct PorosityTradeoffReport {
  std::vector<TradeoffMember> members;
  double fitted_c = 0;
  bool decreasing = true;     // dimension strictly decreasing in rho
  bool middle_under_bound = true;
};

// Family check for the porosity-dimension tradeoff on middle-lambda Cantor
// measures: dimension log2/log(2/(1-lambda)) must decrease as the porosity
// rho ~ lambda/2 grows, and the middle member must sit under the bound whose
// constant is fitted from the extremes.
PorosityTradeoffReport check_porosity_dimension_tradeoff(const std::vector<double>& lambdas,
                                                         int depth, double epsilon);

}  // namespace locdim
