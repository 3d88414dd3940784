#pragma once

#include <vector>

namespace locdim {

// Least-squares line through (xs, ys), plus the extreme two-point increments.
// Estimators that report a log-log dimension expose all three numbers so a
// caller can judge how settled the scaling is.
struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;       // RMS residual of the fit
  double min_increment = 0;  // min over consecutive pairs of dy/dx
  double max_increment = 0;
  int points = 0;
};

SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Geometric grid a, a*ratio, ..., (count points).
std::vector<double> geometric_grid(double start, double ratio, int count);

}  // namespace locdim
