#pragma once

#include <vector>

#include "locdim/fit.hpp"
#include "locdim/measure.hpp"

namespace locdim {

// ---- packing moment sums -------------------------------------------------

// Greedy packing estimate of sup { sum mu(B(c, delta))^q } over delta-packings
// of B(x, r) with centers on the support.  Heaviest-first for q >= 1 (few
// heavy balls dominate), stored order otherwise (more balls dominate).
double s_q_packing(const Measure& mu, const Point& x, double r, double delta, double q);

// ---- local and global L^q scaling ---------------------------------------

// Tree backend: slope of log partition-sum against log level-scale over
// levels [n_min, n_max], cells restricted to B(x, r) (r = kWholeSpace for the
// global sum).
SlopeFit tau_local_tree(const MeasureTree& tree, double x, double r, double q, int n_min,
                        int n_max);

// Atomic backend: slope of log S_q(delta) against log delta over the grid.
SlopeFit tau_global_atomic(const Measure& mu, double q, const std::vector<double>& delta_grid);

// Atomic backend, packing sums restricted to B(x, r).
SlopeFit tau_local_atomic(const Measure& mu, const Point& x, double r, double q,
                          const std::vector<double>& delta_grid);

SlopeFit tau_global_tree(const MeasureTree& tree, double q, int n_min, int n_max);

inline double dim_q(double tau, double q) { return tau / (q - 1.0); }

struct SpectrumSample {
  double q = 0;
  double tau = 0;
  SlopeFit fit;
};

struct SpectrumCurve {
  std::vector<SpectrumSample> samples;
  int doubling_hint = 4;
};

SpectrumCurve spectrum_curve_tree(const MeasureTree& tree, double x, double r,
                                  const std::vector<double>& q_grid, int n_min, int n_max);
SpectrumCurve spectrum_curve_atomic(const Measure& mu, const std::vector<double>& q_grid,
                                    const std::vector<double>& delta_grid);

// Structural checks every scaling curve should satisfy: concavity in q,
// vanishing at q = 1 (tree backends), and the doubling bounds
// min/max{0, (q-1) log2 N}.
struct CurveCheckReport {
  bool concave = true;
  bool tau1_zero = true;
  bool bounds = true;
  double worst_concavity = 0;  // most negative mid-point defect
  double tau_at_1 = 0;
  double worst_bound_excess = 0;
};

CurveCheckReport check_spectrum_curve(const SpectrumCurve& curve, double concavity_tol = 1e-6,
                                      double tau1_tol = 1e-9);

// ---- pointwise dimensions ------------------------------------------------

// Slope of log mu(B(x, r)) against log r over the scale grid.
SlopeFit local_dim_ball(const Measure& mu, const Point& x, const std::vector<double>& scale_grid);

// Slope of log mu(Q_n(x)) against log level-scale for the cells containing x.
SlopeFit local_dim_partition(const MeasureTree& tree, double x, int n_min, int n_max);

struct EntropyDimResult {
  double lower = 0;  // min over the window of the per-level entropy ratio
  double upper = 0;
  double slope = 0;  // fitted slope of the entropy sums (the stable estimate)
};

// Entropy dimension over cells meeting B(x, r):
// sum mu(Q) log mu(Q) / (mu(B) log scale_n), plus the fitted slope of the
// entropy sums against log scale.
EntropyDimResult entropy_dim(const MeasureTree& tree, double x, double r, int n_min, int n_max);

struct DimensionReport {
  double x = 0;
  SlopeFit ball;
  SlopeFit partition;
  EntropyDimResult entropy;
};

DimensionReport dimension_report(const MeasureTree& tree, double x,
                                 const std::vector<double>& ball_scales, int n_min, int n_max);

// ---- Legendre transform --------------------------------------------------

struct LegendrePoint {
  double alpha = 0;
  double value = 0;    // inf_q (q*alpha - tau(q))
  bool boundary = false;  // infimum attained at the edge of the q grid
};

std::vector<LegendrePoint> legendre_transform(const SpectrumCurve& curve,
                                              const std::vector<double>& alpha_grid);

// ---- consistency reports -------------------------------------------------

struct GlobalMinReport {
  double tau_global = 0;
  double min_local = 0;
  double max_gap = 0;  // tau_global - min_local
  std::vector<double> local_taus;
};

// The global scaling exponent should match the minimum of the local ones
// over a well-spread sample of base points.
GlobalMinReport check_global_is_min_local(const MeasureTree& tree, double q,
                                          const std::vector<double>& sample_points,
                                          double local_radius, int n_min, int n_max);

struct SandwichSample {
  double x = 0;
  double ldim = 0;  // fitted partition slope (lower reading)
  double udim = 0;  // same estimator, upper reading
  bool satisfied = true;
};

struct SandwichReport {
  double dim_lo = 0;   // dim_q at the upper q (lower bound side)
  double dim_hi = 0;   // dim_q at the lower q (upper bound side)
  double mean_ldim = 0;
  double mean_udim = 0;
  bool mean_satisfied = true;
  int pointwise_violations = 0;
  std::vector<SandwichSample> samples;
};

// dim_{q_hi} <= local dimension <= dim_{q_lo} around q = 1; finite-depth
// leaves fluctuate point by point, so the report carries both the per-point
// outcomes and the sample mean.
SandwichReport check_dim_sandwich(const MeasureTree& tree,
                                  const std::vector<double>& sample_points, double q_lo,
                                  double q_hi, int n_min, int n_max, double tol);

}  // namespace locdim
