#include "locdim/porosity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "locdim/fit.hpp"
#include "locdim/moran.hpp"
#include "locdim/spectrum.hpp"

namespace locdim {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

std::vector<double> axpy(const std::vector<double>& base, double t, const std::vector<double>& dir) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * dir[i];
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Random orthonormal k-frame in dimension d (Gram-Schmidt on Gaussians).
std::vector<std::vector<double>> random_frame(int d, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> frame;
  while (static_cast<int>(frame.size()) < k) {
    std::vector<double> v(d);
    for (double& c : v) c = gauss(rng);
    for (const auto& u : frame) {
      double p = dot(v, u);
      for (int i = 0; i < d; ++i) v[i] -= p * u[i];
    }
    double n = norm(v);
    if (n < 1e-8) continue;
    for (double& c : v) c /= n;
    frame.push_back(std::move(v));
  }
  return frame;
}

std::vector<std::vector<double>> axis_frame(int d, int k) {
  std::vector<std::vector<double>> frame(k, std::vector<double>(d, 0.0));
  for (int i = 0; i < k; ++i) frame[i][i] = 1.0;
  return frame;
}

// Largest relative hole at center y: distance to the set capped by the
// containment budget r - |x - y|, both divided by r.
double set_hole_size(const std::vector<Point>& A, const MetricSpace& space, const Point& x,
                     double r, const Point& y) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& a : A) nearest = std::min(nearest, space.distance(y, a));
  double budget = r - space.distance(x, y);
  return std::max(0.0, std::min(nearest, budget) / r);
}

// Maximize set_hole_size along the ray x + t*dir, t in [0, r]: coarse grid
// plus golden-section refinement around the best sample.
std::pair<double, double> best_on_ray(const std::vector<Point>& A, const MetricSpace& space,
                                      const Point& x, double r,
                                      const std::vector<double>& dir) {
  auto eval = [&](double t) {
    Point y;
    y.x = axpy(x.x, t, dir);
    return set_hole_size(A, space, x, r, y);
  };
  const int kGrid = 128;
  double best_t = 0, best_v = 0;
  for (int i = 0; i <= kGrid; ++i) {
    double t = r * i / kGrid;
    double v = eval(t);
    if (v > best_v) best_v = v, best_t = t;
  }
  double lo = std::max(0.0, best_t - r / kGrid);
  double hi = std::min(r, best_t + r / kGrid);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = eval(d);
    }
  }
  double t = 0.5 * (lo + hi);
  double v = eval(t);
  if (v > best_v) best_v = v, best_t = t;
  return {best_t, best_v};
}

// 1-D exact: within a gap (a, b) the hole size min(y-a, b-y, r-|x-y|)/r is a
// minimum of concave pieces, so ternary search is exact.
std::pair<double, double> best_in_gap(double a, double b, double x, double r) {
  auto eval = [&](double y) {
    double nearest = std::min(y - a, b - y);
    if (a == -std::numeric_limits<double>::infinity()) nearest = b - y;
    if (b == std::numeric_limits<double>::infinity()) nearest = y - a;
    return std::max(0.0, std::min(nearest, r - std::abs(x - y)) / r);
  };
  double lo = std::max(a, x - r), hi = std::min(b, x + r);
  if (lo >= hi) return {0.5 * (a + b), 0.0};
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (eval(m1) < eval(m2))
      lo = m1;
    else
      hi = m2;
  }
  double y = 0.5 * (lo + hi);
  return {y, eval(y)};
}

struct MeasureContext {
  const Measure* mu;
  double threshold;  // epsilon * mu(B(x, r))
};

bool measure_hole_feasible_t(const MeasureContext& ctx, const Point& x, double r, double rho,
                             const Point& y) {
  double budget = r - ctx.mu->distance(x, y);
  if (rho * r > budget * (1.0 + kRelTol) + 1e-300) return false;
  return ctx.mu->ball_mass(y, rho * r).mass <= ctx.threshold;
}

}  // namespace

PorosityResult por_set(const std::vector<Point>& A, const MetricSpace& space,
                       const PorosityQuery& q) {
  if (A.empty()) throw std::invalid_argument("por_set: empty set");
  if (q.r <= 0) throw std::invalid_argument("por_set: r must be positive");
  double to_set = std::numeric_limits<double>::infinity();
  for (const auto& a : A) to_set = std::min(to_set, space.distance(q.x, a));
  if (to_set > 1e-9 * q.r) throw std::invalid_argument("por_set: x must belong to the set");

  const auto* euc = dynamic_cast<const EuclideanSpace*>(&space);
  PorosityResult res;

  if (euc && euc->dim() == 1 && q.k == 1) {
    std::vector<double> xs;
    xs.reserve(A.size());
    for (const auto& a : A) xs.push_back(a.x[0]);
    std::sort(xs.begin(), xs.end());
    double x0 = q.x.x[0];
    auto consider = [&](double a, double b) {
      auto [y, v] = best_in_gap(a, b, x0, q.r);
      if (v > res.rho) {
        res.rho = v;
        res.holes = {point1d(y)};
      }
    };
    // only interior gaps count: holes outside the convex hull of the set say
    // nothing about its structure
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (xs[i + 1] > xs[i]) consider(xs[i], xs[i + 1]);
    res.exact = true;
    return res;
  }

  if (!euc) {
    // Abstract metric space: only 1-porosity, and the only representable
    // hole centers are set points, which are never empty.  Report the trivial
    // lower bound and flag it.
    if (q.k != 1) throw std::invalid_argument("por_set: k > 1 needs a Euclidean space");
    res.rho = 0;
    res.exact = false;
    return res;
  }

  int d = euc->dim();
  if (q.k < 1 || q.k > d) throw std::invalid_argument("por_set: k out of range");
  std::mt19937_64 rng(q.seed);

  std::vector<std::vector<std::vector<double>>> frames;
  frames.push_back(axis_frame(d, q.k));
  for (int f = 0; f < q.frames; ++f) frames.push_back(random_frame(d, q.k, rng));

  for (const auto& frame : frames) {
    double frame_rho = std::numeric_limits<double>::infinity();
    std::vector<Point> frame_holes;
    for (const auto& axis : frame) {
      double best_v = -1, best_t = 0;
      std::vector<double> best_dir;
      for (double sign : {1.0, -1.0}) {
        std::vector<double> dir(axis);
        for (double& c : dir) c *= sign;
        auto [t, v] = best_on_ray(A, space, q.x, q.r, dir);
        if (v > best_v) best_v = v, best_t = t, best_dir = dir;
      }
      frame_rho = std::min(frame_rho, best_v);
      Point y;
      y.x = axpy(q.x.x, best_t, best_dir);
      frame_holes.push_back(std::move(y));
    }
    if (frame_rho > res.rho) {
      res.rho = frame_rho;
      res.holes = std::move(frame_holes);
    }
  }
  res.exact = false;  // sampled directions: lower bound
  return res;
}

PorosityResult por_measure(const Measure& mu, const PorosityQuery& q) {
  if (q.r <= 0) throw std::invalid_argument("por_measure: r must be positive");
  auto base = mu.ball_mass(q.x, q.r);
  if (base.mass <= 0) throw std::invalid_argument("por_measure: zero mass at the base ball");
  MeasureContext ctx{&mu, q.epsilon * base.mass};

  PorosityResult res;
  res.rho = 0;

  if (mu.line_embedded() && q.k == 1) {
    double x0 = q.x.x[0];
    // hole-center candidates: support-gap midpoints, a uniform grid across
    // B(x, r), and the support points' outer neighborhoods
    std::vector<double> sup;
    for (std::size_t i = 0; i < mu.support_size(); ++i) sup.push_back(mu.support_point(i).x[0]);
    std::sort(sup.begin(), sup.end());
    std::vector<double> cand;
    for (std::size_t i = 0; i + 1 < sup.size(); ++i)
      if (sup[i + 1] > sup[i]) cand.push_back(0.5 * (sup[i] + sup[i + 1]));
    // uniform grid clamped to the support hull: exterior holes say nothing
    // about the structure of the measure
    const int kGrid = 512;
    double glo = std::max(x0 - q.r, sup.front());
    double ghi = std::min(x0 + q.r, sup.back());
    for (int i = 0; i <= kGrid; ++i) cand.push_back(glo + (ghi - glo) * i / kGrid);

    auto feasible = [&](double rho, double* witness) {
      for (double y : cand) {
        if (std::abs(y - x0) + rho * q.r > q.r * (1.0 + kRelTol)) continue;
        if (mu.ball_mass(point1d(y), rho * q.r).mass <= ctx.threshold) {
          if (witness) *witness = y;
          return true;
        }
      }
      return false;
    };
    double lo = 0, hi = 1.0, wit = x0;
    if (!feasible(lo, &wit)) {
      res.exact = true;
      return res;  // even rho = 0 infeasible only if every candidate is heavy
    }
    while (hi - lo > 1e-6) {
      double mid = 0.5 * (lo + hi);
      double w;
      if (feasible(mid, &w))
        lo = mid, wit = w;
      else
        hi = mid;
    }
    res.rho = lo;
    res.holes = {point1d(wit)};
    res.exact = true;
    return res;
  }

  // Euclidean k-hole search along orthonormal frames; shared rho by
  // bisection, t scanned on a grid per axis.  Flagged lower bound.
  const auto* atomic = dynamic_cast<const AtomicMeasure*>(&mu);
  const auto* euc = atomic ? dynamic_cast<const EuclideanSpace*>(&atomic->space()) : nullptr;
  if (!euc) throw std::invalid_argument("por_measure: k > 1 needs a Euclidean atomic measure");
  int d = euc->dim();
  if (q.k < 1 || q.k > d) throw std::invalid_argument("por_measure: k out of range");
  std::mt19937_64 rng(q.seed);
  std::vector<std::vector<std::vector<double>>> frames;
  frames.push_back(axis_frame(d, q.k));
  for (int f = 0; f < q.frames; ++f) frames.push_back(random_frame(d, q.k, rng));

  const int kTGrid = 64;
  for (const auto& frame : frames) {
    auto axis_feasible = [&](const std::vector<double>& axis, double rho, Point* witness) {
      for (double sign : {1.0, -1.0}) {
        for (int i = 0; i <= kTGrid; ++i) {
          double t = q.r * (1.0 - rho) * i / kTGrid;
          Point y;
          y.x = axpy(q.x.x, sign * t, axis);
          if (measure_hole_feasible_t(ctx, q.x, q.r, rho, y)) {
            if (witness) *witness = y;
            return true;
          }
        }
      }
      return false;
    };
    auto feasible = [&](double rho, std::vector<Point>* holes) {
      std::vector<Point> w(frame.size());
      for (std::size_t i = 0; i < frame.size(); ++i)
        if (!axis_feasible(frame[i], rho, &w[i])) return false;
      if (holes) *holes = std::move(w);
      return true;
    };
    std::vector<Point> wit;
    if (!feasible(0, &wit)) continue;
    double lo = 0, hi = 1.0;
    while (hi - lo > 1e-6) {
      double mid = 0.5 * (lo + hi);
      std::vector<Point> w;
      if (feasible(mid, &w))
        lo = mid, wit = std::move(w);
      else
        hi = mid;
    }
    if (lo > res.rho) {
      res.rho = lo;
      res.holes = wit;
    }
  }
  res.exact = false;
  return res;
}

double kpor_bound(double rho, int k, int d, double c) {
  if (!(rho > 0 && rho < 0.5)) throw std::domain_error("kpor_bound: rho must lie in (0, 1/2)");
  return static_cast<double>(d - k) + c / (-std::log(1.0 - 2.0 * rho));
}

double metric_poro_bound(double s, double rho, double c) {
  if (s <= 0) throw std::domain_error("metric_poro_bound: s must be positive");
  return s - c * std::pow(rho, s);
}

CoverCount porous_cover_count(const std::vector<Point>& A, const MetricSpace& space,
                              const Point& x0, double r, double rho, int k, int d) {
  CoverCount out;
  out.bound_shape = std::pow(1.0 - 2.0 * rho, k - d);
  double cover_r = (1.0 - 2.0 * rho) * r;
  std::vector<char> covered(A.size(), 0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (covered[i]) continue;
    ++out.count;
    for (std::size_t j = i; j < A.size(); ++j)
      if (!covered[j] && space.distance(A[i], A[j]) <= cover_r) covered[j] = 1;
  }
  (void)x0;
  return out;
}

double cone_mass_ratio(const AtomicMeasure& mu, const Cone& cone) {
  const int d = static_cast<int>(cone.apex.size());
  for (const auto& v : cone.V)
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("cone: basis dimension");
  for (std::size_t i = 0; i < cone.V.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double p = dot(cone.V[i], cone.V[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(p - want) > 1e-10) throw std::invalid_argument("cone: basis not orthonormal");
    }
  if (std::abs(norm(cone.theta) - 1.0) > 1e-10)
    throw std::invalid_argument("cone: theta must be a unit vector");

  Point apex;
  apex.x = cone.apex;
  double denom = mu.ball_mass(apex, cone.r).mass;
  if (denom <= 0) throw std::invalid_argument("cone: zero mass at the apex ball");

  double num = 0;
  for (std::size_t i = 0; i < mu.support_size(); ++i) {
    const auto& p = mu.support_point(i);
    std::vector<double> w(d);
    for (int c = 0; c < d; ++c) w[c] = p.x[c] - cone.apex[c];
    double wn = norm(w);
    if (wn <= 0 || wn > cone.r) continue;
    // distance to span(V)
    std::vector<double> proj(d, 0.0);
    for (const auto& v : cone.V) {
      double pv = dot(w, v);
      for (int c = 0; c < d; ++c) proj[c] += pv * v[c];
    }
    double dist2 = 0;
    for (int c = 0; c < d; ++c) {
      double diff = w[c] - proj[c];
      dist2 += diff * diff;
    }
    bool in_cone = std::sqrt(dist2) < cone.alpha * wn;
    bool in_half = dot(w, cone.theta) > cone.alpha * wn;
    if (in_cone && !in_half) num += mu.support_mass(i);
  }
  return num / denom;
}

PorosityTradeoffReport check_porosity_dimension_tradeoff(const std::vector<double>& lambdas,
                                                         int depth, double epsilon) {
  if (lambdas.size() < 3)
    throw std::invalid_argument("porosity tradeoff: need at least 3 family members");
  PorosityTradeoffReport report;
  for (double lambda : lambdas) {
    double a = 0.5 * (1.0 - lambda);
    MeasureTree tree = build_selfsimilar_tree(cantor_spec(a, 0.5), depth);
    PorosityQuery q;
    q.x = point1d(0.0);
    q.r = 1.0;
    q.k = 1;
    q.epsilon = epsilon;
    PorosityResult pr = por_measure(tree, q);
    std::vector<double> scales;
    for (int n = 1; n < depth; ++n) scales.push_back(std::pow(a, n));
    SlopeFit dim = local_dim_ball(tree, point1d(0.0), scales);
    TradeoffMember m;
    m.lambda = lambda;
    m.rho = pr.rho;
    m.dim_estimate = dim.slope;
    report.members.push_back(m);
  }
  std::sort(report.members.begin(), report.members.end(),
            [](const TradeoffMember& a, const TradeoffMember& b) { return a.rho < b.rho; });
  for (std::size_t i = 0; i + 1 < report.members.size(); ++i)
    if (report.members[i + 1].dim_estimate >= report.members[i].dim_estimate)
      report.decreasing = false;

  // fit the bound constant from the extreme members, then check the rest
  auto needed_c = [](const TradeoffMember& m) {
    return m.dim_estimate * (-std::log(1.0 - 2.0 * m.rho));
  };
  report.fitted_c = std::max(needed_c(report.members.front()), needed_c(report.members.back()));
  for (auto& m : report.members) {
    m.bound = kpor_bound(m.rho, 1, 1, report.fitted_c);
    if (m.dim_estimate > m.bound + 1e-9) report.middle_under_bound = false;
  }
  return report;
}

}  // namespace locdim
