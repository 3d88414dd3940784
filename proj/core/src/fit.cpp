#include "locdim/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace locdim {

SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need at least two points");
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  SlopeFit f;
  f.points = n;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    const double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  f.min_increment = std::numeric_limits<double>::infinity();
  f.max_increment = -std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) {
    const double dx = xs[i + 1] - xs[i];
    if (dx == 0) continue;
    const double inc = (ys[i + 1] - ys[i]) / dx;
    f.min_increment = std::min(f.min_increment, inc);
    f.max_increment = std::max(f.max_increment, inc);
  }
  return f;
}

std::vector<double> geometric_grid(double start, double ratio, int count) {
  if (!(start > 0) || !(ratio > 0) || count < 1)
    throw std::invalid_argument("geometric_grid: bad parameters");
  std::vector<double> g(count);
  double v = start;
  for (int i = 0; i < count; ++i) {
    g[i] = v;
    v *= ratio;
  }
  return g;
}

}  // namespace locdim
