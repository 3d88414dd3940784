#include "locdim/moran.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace locdim {

namespace {

std::vector<double> mix_toward(const std::vector<double>& limit, const std::vector<double>& start,
                               int level) {
  if (start.empty()) return limit;
  const double w = std::exp2(-static_cast<double>(level));
  std::vector<double> out(limit.size());
  for (std::size_t i = 0; i < limit.size(); ++i)
    out[i] = limit[i] + (start[i] - limit[i]) * w;
  return out;
}

}  // namespace

void SelfSimilarSpec::validate() const {
  if (ratios.size() < 2 || ratios.size() != weights.size())
    throw std::invalid_argument("SelfSimilarSpec: need >= 2 branches with matching weights");
  double s = 0;
  for (double r : ratios)
    if (!(r > 0) || !(r < 1)) throw std::invalid_argument("SelfSimilarSpec: ratios must be in (0,1)");
  for (double p : weights) {
    if (!(p > 0) || !(p < 1))
      throw std::invalid_argument("SelfSimilarSpec: weights must be in (0,1)");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("SelfSimilarSpec: weights must sum to 1");
  if (!start_weights.empty() && start_weights.size() != weights.size())
    throw std::invalid_argument("SelfSimilarSpec: start_weights size mismatch");
  if (!start_ratios.empty() && start_ratios.size() != ratios.size())
    throw std::invalid_argument("SelfSimilarSpec: start_ratios size mismatch");
}

std::vector<double> SelfSimilarSpec::weights_at_level(int n) const {
  std::vector<double> w = mix_toward(weights, start_weights, n);
  double s = 0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return w;
}

std::vector<double> SelfSimilarSpec::ratios_at_level(int n) const {
  return mix_toward(ratios, start_ratios, n);
}

SelfSimilarSpec cantor_spec(double ratio, double p0) {
  SelfSimilarSpec s;
  s.ratios = {ratio, ratio};
  s.weights = {p0, 1.0 - p0};
  s.validate();
  return s;
}

double moment_equation(const SelfSimilarSpec& spec, double q, double tau) {
  double s = 0;
  for (std::size_t i = 0; i < spec.ratios.size(); ++i)
    s += std::pow(spec.weights[i], q) * std::pow(spec.ratios[i], -tau);
  return s - 1.0;
}

double solve_tau(const SelfSimilarSpec& spec, double q, double tol) {
  spec.validate();
  // sum p_i^q r_i^{-tau} is strictly increasing in tau (r_i < 1), so a sign
  // change brackets the unique root
  double lo = -1.0, hi = 1.0;
  int guard = 0;
  while (moment_equation(spec, q, lo) > 0) {
    lo *= 2;
    if (++guard > 200) throw std::runtime_error("solve_tau: bracket failure (low)");
  }
  guard = 0;
  while (moment_equation(spec, q, hi) < 0) {
    hi *= 2;
    if (++guard > 200) throw std::runtime_error("solve_tau: bracket failure (high)");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (moment_equation(spec, q, mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double dim_formula(const SelfSimilarSpec& spec) {
  spec.validate();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < spec.ratios.size(); ++i) {
    num += spec.weights[i] * std::log(spec.weights[i]);
    den += spec.weights[i] * std::log(spec.ratios[i]);
  }
  return num / den;
}

std::pair<double, double> alpha_range(const SelfSimilarSpec& spec) {
  spec.validate();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.ratios.size(); ++i) {
    const double a = std::log(spec.weights[i]) / std::log(spec.ratios[i]);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

std::vector<SpectrumPoint> exact_spectrum(const SelfSimilarSpec& spec,
                                          const std::vector<double>& alpha_grid,
                                          double q_limit) {
  spec.validate();
  const auto [amin, amax] = alpha_range(spec);
  std::vector<SpectrumPoint> out;
  const double tol = std::max(amax - amin, 1.0) * 1e-9;
  for (double alpha : alpha_grid) {
    if (alpha < amin - tol || alpha > amax + tol)
      throw std::domain_error("exact_spectrum: alpha outside the attainable range");
    // q |-> q*alpha - tau(q) is convex (tau concave); golden-section search
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -q_limit, b = q_limit;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    auto h = [&](double q) { return q * alpha - solve_tau(spec, q); };
    double hc = h(c), hd = h(d);
    while (b - a > 1e-7) {
      if (hc < hd) {
        b = d;
        d = c;
        hd = hc;
        c = b - gr * (b - a);
        hc = h(c);
      } else {
        a = c;
        c = d;
        hc = hd;
        d = a + gr * (b - a);
        hd = h(d);
      }
    }
    SpectrumPoint p;
    p.alpha = alpha;
    p.arg_q = 0.5 * (a + b);
    p.value = h(p.arg_q);
    p.boundary = (std::abs(p.arg_q) > q_limit - 1e-3);
    out.push_back(p);
  }
  return out;
}

MeasureTree build_selfsimilar_tree(const SelfSimilarSpec& spec, int depth) {
  spec.validate();
  if (depth < 1 || depth > 24) throw std::invalid_argument("build_selfsimilar_tree: bad depth");
  double min_p = 1;
  for (double p : spec.weights) min_p = std::min(min_p, p);
  if (depth * std::log(min_p) < 0.9 * std::log(std::numeric_limits<double>::min()))
    throw std::domain_error("build_selfsimilar_tree: leaf masses underflow at this depth");

  const int m = spec.branches();
  std::vector<MeasureTree::Cell> cells;
  MeasureTree::Cell root;
  root.mass = 1.0;
  root.left = 0.0;
  root.right = 1.0;
  cells.push_back(root);

  std::vector<int> frontier = {0};
  for (int level = 1; level <= depth; ++level) {
    const std::vector<double> w = spec.weights_at_level(level);
    const std::vector<double> rr = spec.ratios_at_level(level);
    double rsum = 0;
    for (double r : rr) rsum += r;
    if (rsum >= 1.0)
      throw std::invalid_argument("build_selfsimilar_tree: ratios must leave room for gaps");
    std::vector<int> next;
    for (int parent : frontier) {
      const double L = cells[parent].left, W = cells[parent].right - cells[parent].left;
      // children left to right with equal gaps; first child starts at the
      // parent's left endpoint, last child ends at its right endpoint
      const double gap = W * (1.0 - rsum) / (m - 1);
      double cursor = L;
      for (int i = 0; i < m; ++i) {
        MeasureTree::Cell c;
        c.parent = parent;
        c.mass = cells[parent].mass * w[i];
        c.left = cursor;
        c.right = cursor + W * rr[i];
        cursor = c.right + gap;
        const int id = static_cast<int>(cells.size());
        cells.push_back(c);
        cells[parent].children.push_back(id);
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  return MeasureTree(std::move(cells), /*embedded=*/true);
}

bool MoranValidation::all() const {
  return nesting.pass && separation.pass && inner_ball.pass && shrinking.pass &&
         bounded_ratio.pass && diameter_regular.pass && cut_partition.pass;
}

MoranValidation validate_moran(const MeasureTree& tree) {
  MoranValidation v;
  std::ostringstream w;

  if (!tree.embedded()) {
    v.nesting.pass = false;
    v.nesting.witness = "tree is not embedded; structural audit needs intervals";
    return v;
  }

  // nesting and separation
  for (int i = 0; i < tree.cell_count(); ++i) {
    const auto& c = tree.cell(i);
    if (c.parent >= 0) {
      const auto& p = tree.cell(c.parent);
      const double tol = std::max(p.right - p.left, 1e-30) * 1e-12;
      if (c.left < p.left - tol || c.right > p.right + tol) {
        v.nesting.pass = false;
        w.str("");
        w << "cell " << i << " [" << c.left << "," << c.right << "] escapes parent";
        v.nesting.witness = w.str();
      }
    }
    for (std::size_t a = 0; a < c.children.size(); ++a) {
      for (std::size_t b = a + 1; b < c.children.size(); ++b) {
        const auto& ca = tree.cell(c.children[a]);
        const auto& cb = tree.cell(c.children[b]);
        const double lo = std::max(ca.left, cb.left), hi = std::min(ca.right, cb.right);
        if (hi >= lo) {  // touching siblings count as failed separation
          v.separation.pass = false;
          w.str("");
          w << "children " << c.children[a] << " and " << c.children[b] << " of cell " << i
            << " are not strongly separated";
          v.separation.witness = w.str();
        }
      }
    }
  }

  // inner balls at representatives (interval midpoints): inradius/diameter
  v.C0 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tree.cell_count(); ++i) {
    const auto& c = tree.cell(i);
    if (c.diameter > 0) v.C0 = std::min(v.C0, 0.5);  // midpoint inradius is half the diameter
    else {
      v.inner_ball.pass = false;
      v.inner_ball.witness = "degenerate cell with zero diameter";
    }
  }
  if (!std::isfinite(v.C0)) v.C0 = 0;

  // shrinking diameters per level
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= tree.max_level(); ++n) {
    double mx = 0;
    for (int id : tree.level(n)) mx = std::max(mx, tree.cell(id).diameter);
    if (mx >= prev) {
      v.shrinking.pass = false;
      w.str("");
      w << "max diameter does not decrease from level " << n - 1 << " to " << n;
      v.shrinking.witness = w.str();
    }
    prev = mx;
  }

  // bounded parent/child ratio
  v.C1 = tree.max_parent_child_ratio();
  if (!(v.C1 > 0) || !std::isfinite(v.C1)) {
    v.bounded_ratio.pass = false;
    v.bounded_ratio.witness = "parent/child diameter ratio unbounded or undefined";
  }

  // diameter regularity: along each leaf's ancestor chain, the diameter at
  // depth n relative to the root should track a geometric trend; we report
  // failure only when the per-level ratio drifts unboundedly (finite check:
  // ratio of successive log-diameter increments stays within [1/C1^2, C1^2])
  for (int leaf : tree.leaves()) {
    int id = leaf;
    double prev_ratio = -1;
    while (tree.cell(id).parent >= 0) {
      const auto& c = tree.cell(id);
      const auto& p = tree.cell(c.parent);
      if (c.diameter <= 0 || p.diameter <= 0) break;
      const double ratio = p.diameter / c.diameter;
      if (prev_ratio > 0 && v.C1 > 0) {
        if (ratio > v.C1 * (1 + 1e-9)) {
          v.diameter_regular.pass = false;
          v.diameter_regular.witness = "per-level contraction exceeds the measured bound";
        }
      }
      prev_ratio = ratio;
      id = c.parent;
    }
    if (!v.diameter_regular.pass) break;
  }

  // diameter cuts produce pairwise disjoint families carrying full mass
  if (v.C0 > 0 && std::isfinite(v.C1) && v.C1 > 0) {
    const double root_diam = tree.cell(0).diameter;
    for (int n = 1; n <= 3; ++n) {
      const double threshold = v.C1 / (v.C0 * std::exp2(static_cast<double>(n)));
      if (threshold >= root_diam) continue;
      if (threshold < tree.min_leaf_diameter()) break;
      try {
        PartitionLevel cut = tree.diameter_cut(n, v.C0, v.C1);
        double mass = 0;
        for (const auto& cell : cut.cells) mass += tree.cell(cell.id).mass;
        if (std::abs(mass - tree.total_mass()) > 1e-9) {
          v.cut_partition.pass = false;
          v.cut_partition.witness = "diameter cut loses mass";
        }
      } catch (const std::exception& e) {
        v.cut_partition.pass = false;
        v.cut_partition.witness = e.what();
      }
    }
  }
  return v;
}

std::vector<int> sample_typical_leaves(const MeasureTree& tree,
                                       const std::vector<double>& weights, int count,
                                       double band, std::uint64_t seed) {
  if (weights.empty() || count < 1) throw std::invalid_argument("sample_typical_leaves: bad args");
  const int m = static_cast<int>(weights.size());
  std::mt19937_64 gen(seed);
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::set<int> found;
  long attempts = 0;
  const long max_attempts = 200000L * count;
  while (static_cast<int>(found.size()) < count) {
    if (++attempts > max_attempts)
      throw std::runtime_error("sample_typical_leaves: rejection sampling stalled");
    int id = 0;
    std::vector<int> counts(m, 0);
    int n = 0;
    bool ok = true;
    while (!tree.cell(id).children.empty()) {
      const auto& ch = tree.cell(id).children;
      if (static_cast<int>(ch.size()) != m) {
        ok = false;
        break;
      }
      const int b = pick(gen);
      ++counts[b];
      ++n;
      for (int i = 0; i < m; ++i) {
        if (std::abs(counts[i] - n * weights[i]) > band) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      id = ch[b];
    }
    if (ok) found.insert(id);
  }
  return std::vector<int>(found.begin(), found.end());
}

}  // namespace locdim
