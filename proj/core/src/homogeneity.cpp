#include "locdim/homogeneity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace locdim {

namespace {

struct Candidate {
  Point p;
  double coord = 0;  // 1-D fast path
  double ball_mass = 0;
  std::size_t index = 0;
};

// exact max number of pairwise disjoint equal balls with centers on a line:
// classic greedy interval scheduling (leftmost-first)
long line_max_disjoint(std::vector<Candidate>& cands, double radius) {
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.coord < b.coord; });
  long count = 0;
  double last = 0;
  bool have = false;
  for (const Candidate& c : cands) {
    if (!have || balls_disjoint(c.coord - last, radius, radius)) {
      ++count;
      last = c.coord;
      have = true;
    }
  }
  return count;
}

long greedy_by_mass(const Measure& mu, const std::vector<Candidate>& cands, double radius) {
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].ball_mass > cands[b].ball_mass;
  });
  std::vector<std::size_t> picked;
  for (std::size_t i : order) {
    bool ok = true;
    for (std::size_t j : picked) {
      if (!balls_disjoint(mu.distance(cands[i].p, cands[j].p), radius, radius)) {
        ok = false;
        break;
      }
    }
    if (ok) picked.push_back(i);
  }
  return static_cast<long>(picked.size());
}

// branch and bound maximum independent set over <= 64 vertices
long bb_mis(const std::vector<std::uint64_t>& adj, std::uint64_t pool, long current, long& best) {
  if (current + std::popcount(pool) <= best) return best;
  if (pool == 0) {
    best = std::max(best, current);
    return best;
  }
  const int v = std::countr_zero(pool);
  // branch 1: take v
  bb_mis(adj, pool & ~(adj[v] | (std::uint64_t{1} << v)), current + 1, best);
  // branch 2: skip v
  bb_mis(adj, pool & ~(std::uint64_t{1} << v), current, best);
  return best;
}

}  // namespace

HomCountResult hom_count(const Measure& mu, const HomogeneityQuery& q) {
  if (!(q.delta > 0) || !(q.r > 0))
    throw std::invalid_argument("hom_count: delta and r must be positive");
  if (!(q.epsilon >= 0)) throw std::invalid_argument("hom_count: negative epsilon");
  if (!(q.gamma >= 1)) throw std::invalid_argument("hom_count: gamma must be >= 1");

  HomCountResult out;
  out.reference_mass = mu.ball_mass(q.x, q.gamma * q.r).mass;
  const double threshold = q.epsilon * out.reference_mass;
  const double radius = q.delta * q.r;

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < mu.support_size(); ++i) {
    const Point& p = mu.support_point(i);
    if (mu.distance(q.x, p) > q.r * (1.0 + kRelTol)) continue;
    const double m = mu.ball_mass(p, radius).mass;
    if (m > threshold) {
      Candidate c;
      c.p = p;
      c.coord = p.x.empty() ? 0.0 : p.x[0];
      c.ball_mass = m;
      c.index = i;
      cands.push_back(std::move(c));
    }
  }
  out.candidates = static_cast<long>(cands.size());
  if (cands.empty()) return out;

  if (mu.line_embedded()) {
    out.count = line_max_disjoint(cands, radius);
    out.exact = true;
    return out;
  }

  const long greedy = greedy_by_mass(mu, cands, radius);
  if (cands.size() <= 64) {
    std::vector<std::uint64_t> adj(cands.size(), 0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (!balls_disjoint(mu.distance(cands[i].p, cands[j].p), radius, radius)) {
          adj[i] |= std::uint64_t{1} << j;
          adj[j] |= std::uint64_t{1} << i;
        }
      }
    }
    long best = greedy;  // the exact optimum can never undercut a feasible selection
    const std::uint64_t pool =
        cands.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cands.size()) - 1);
    bb_mis(adj, pool, 0, best);
    out.count = best;
    out.exact = true;
  } else {
    out.count = greedy;
    out.exact = false;
  }
  return out;
}

HomogeneityProfile hom_delta_profile(const Measure& mu, const Point& x,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& epsilon_grid,
                                     const std::vector<double>& r_grid, double gamma) {
  if (delta_grid.empty() || epsilon_grid.empty() || r_grid.empty())
    throw std::invalid_argument("hom_delta_profile: empty grid");
  std::vector<double> eps = epsilon_grid;
  std::sort(eps.begin(), eps.end(), std::greater<double>());

  HomogeneityProfile prof;
  prof.gamma = gamma;
  for (double delta : delta_grid) {
    auto max_over_r = [&](double epsilon, double* r_used, bool* exact) {
      long best = 0;
      double br = r_grid.front();
      bool bex = true;
      for (double r : r_grid) {
        HomogeneityQuery q{x, delta, epsilon, r, gamma};
        HomCountResult res = hom_count(mu, q);
        if (res.count > best) {
          best = res.count;
          br = r;
          bex = res.exact;
        }
      }
      if (r_used) *r_used = br;
      if (exact) *exact = bex;
      return best;
    };

    HomProfileEntry entry;
    entry.delta = delta;
    entry.stabilized = false;
    for (double e : eps) {  // descending; keep overwriting so the smallest stabilized wins
      double r_used;
      bool exact;
      const long c = max_over_r(e, &r_used, &exact);
      const long c_half = max_over_r(e / 2.0, nullptr, nullptr);
      if (c == c_half) {
        entry.count = c;
        entry.epsilon_used = e;
        entry.r_used = r_used;
        entry.exact = exact;
        entry.stabilized = true;
      }
    }
    if (!entry.stabilized) {
      double r_used;
      bool exact;
      entry.count = max_over_r(eps.back(), &r_used, &exact);
      entry.epsilon_used = eps.back();
      entry.r_used = r_used;
      entry.exact = exact;
    }
    prof.entries.push_back(entry);
  }
  return prof;
}

SlopeFit dim_hom_estimate(const HomogeneityProfile& profile) {
  if (profile.entries.size() < 3)
    throw std::invalid_argument("dim_hom_estimate: need at least three deltas");
  std::vector<double> xs, ys;
  for (const HomProfileEntry& e : profile.entries) {
    xs.push_back(-std::log(e.delta));
    ys.push_back(e.count > 0 ? std::log(static_cast<double>(e.count)) : 0.0);  // log+
  }
  return fit_line(xs, ys);
}

MainInequalityReport check_main_inequality(const Measure& mu, const std::vector<Point>& samples,
                                           const std::vector<double>& delta_grid,
                                           const std::vector<double>& epsilon_grid,
                                           const std::vector<double>& r_grid,
                                           const std::vector<double>& ball_scale_grid,
                                           double gamma, double tolerance) {
  if (ball_scale_grid.size() < 2)
    throw std::invalid_argument("check_main_inequality: need a scale grid");
  MainInequalityReport rep;
  rep.tolerance = tolerance;
  for (const Point& x : samples) {
    MainInequalityReport::Sample s;
    s.x = x;
    std::vector<double> xs, ys;
    for (double r : ball_scale_grid) {
      const double m = mu.ball_mass(x, r).mass;
      if (m > 0) {
        xs.push_back(std::log(r));
        ys.push_back(std::log(m));
      }
    }
    if (xs.size() < 2) throw std::domain_error("check_main_inequality: empty ball masses");
    s.udim_local = fit_line(xs, ys).slope;
    s.dim_hom = dim_hom_estimate(hom_delta_profile(mu, x, delta_grid, epsilon_grid, r_grid, gamma)).slope;
    s.satisfied = s.udim_local <= s.dim_hom + tolerance;
    if (!s.satisfied) ++rep.violations;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace locdim
