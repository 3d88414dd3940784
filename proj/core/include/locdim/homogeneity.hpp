#pragma once

#include <vector>

#include "locdim/fit.hpp"
#include "locdim/measure.hpp"

namespace locdim {

// Largest number of pairwise disjoint (delta*r)-balls inside B(x, r), each
// centered on the support and each carrying mass > epsilon * mu(B(x, gamma*r)).
struct HomogeneityQuery {
  Point x;
  double delta = 0;
  double epsilon = 0;
  double r = 0;
  double gamma = 5.0;
};

struct HomCountResult {
  long count = 0;
  bool exact = true;          // false: greedy lower bound only
  long candidates = 0;        // eligible candidate centers
  double reference_mass = 0;  // mu(B(x, gamma*r))
};

HomCountResult hom_count(const Measure& mu, const HomogeneityQuery& q);

struct HomProfileEntry {
  double delta = 0;
  long count = 0;
  double epsilon_used = 0;
  double r_used = 0;
  bool exact = true;
  bool stabilized = true;  // count unchanged when epsilon is halved
};

struct HomogeneityProfile {
  std::vector<HomProfileEntry> entries;
  double gamma = 5.0;
};

// For each delta: take the max count over the r grid, at the smallest epsilon
// in the grid whose count is unchanged when epsilon is halved.  If no epsilon
// stabilizes, the smallest one is used and the entry is flagged.
HomogeneityProfile hom_delta_profile(const Measure& mu, const Point& x,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& epsilon_grid,
                                     const std::vector<double>& r_grid, double gamma = 5.0);

// Dimension read off the profile: slope of log+ count against -log delta.
SlopeFit dim_hom_estimate(const HomogeneityProfile& profile);

struct MainInequalityReport {
  struct Sample {
    Point x;
    double udim_local = 0;  // fitted upper local dimension (ball masses)
    double dim_hom = 0;
    bool satisfied = true;
  };
  std::vector<Sample> samples;
  double tolerance = 0;
  int violations = 0;
};

// Checks the upper bound "local dimension <= homogeneity dimension" at the
// given sample points.
MainInequalityReport check_main_inequality(const Measure& mu, const std::vector<Point>& samples,
                                           const std::vector<double>& delta_grid,
                                           const std::vector<double>& epsilon_grid,
                                           const std::vector<double>& r_grid,
                                           const std::vector<double>& ball_scale_grid,
                                           double gamma = 5.0, double tolerance = 0.1);

}  // namespace locdim
