#include "locdim/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locdim {

Point point1d(double v) {
  Point p;
  p.x = {v};
  return p;
}

Point point2d(double a, double b) {
  Point p;
  p.x = {a, b};
  return p;
}

EuclideanSpace::EuclideanSpace(int dim)
    : MetricSpace(1), dim_(dim) {
  if (dim < 1 || dim > 15)
    throw std::invalid_argument("EuclideanSpace: dim must be in [1, 15]");
  // standard bound: R^d is doubling with constant 4^d
  long long hint = 1;
  for (int i = 0; i < dim; ++i) hint *= 4;
  doubling_hint_ = static_cast<int>(std::min<long long>(hint, 1 << 30));
}

double EuclideanSpace::distance(const Point& a, const Point& b) const {
  if (static_cast<int>(a.x.size()) != dim_ || static_cast<int>(b.x.size()) != dim_)
    throw std::invalid_argument("EuclideanSpace: point dimension mismatch");
  double s = 0;
  for (int i = 0; i < dim_; ++i) {
    const double d = a.x[i] - b.x[i];
    s += d * d;
  }
  return std::sqrt(s);
}

SequenceSpace::SequenceSpace(int depth) : MetricSpace(3), depth_(depth) {
  if (depth < 1 || depth > 5)
    throw std::invalid_argument(
        "SequenceSpace: depth must be in [1, 5] (per-level scales underflow beyond)");
  top_.resize(depth_);
  log2_eps_.resize(depth_);
  double le = 0.0;  // log2(eps_1) = 0
  for (int n = 1; n <= depth_; ++n) {
    top_[n - 1] = static_cast<long long>(n) << n;  // N_n = n * 2^n
    log2_eps_[n - 1] = le;
    le -= static_cast<double>(top_[n - 1]);        // eps_{n+1} = 2^{-N_n} eps_n
  }
}

long long SequenceSpace::top_symbol(int level) const {
  if (level < 1 || level > depth_) throw std::invalid_argument("SequenceSpace: bad level");
  return top_[level - 1];
}

double SequenceSpace::level_scale(int level) const {
  if (level < 1 || level > depth_) throw std::invalid_argument("SequenceSpace: bad level");
  return std::exp2(log2_eps_[level - 1]);
}

double SequenceSpace::symbol_distance(int level, int i, int j) const {
  if (level < 1 || level > depth_) throw std::invalid_argument("SequenceSpace: bad level");
  const long long n = top_[level - 1];
  if (i < 0 || j < 0 || i > n || j > n)
    throw std::invalid_argument("SequenceSpace: symbol out of range");
  if (i == j) return 0.0;
  const double le = log2_eps_[level - 1];
  double d = 0.0;
  if (i != 0) d += std::exp2(le - i);
  if (j != 0) d += std::exp2(le - j);
  return d;
}

double SequenceSpace::distance(const Point& a, const Point& b) const {
  if (static_cast<int>(a.sym.size()) != depth_ || static_cast<int>(b.sym.size()) != depth_)
    throw std::invalid_argument("SequenceSpace: word length mismatch");
  for (int m = 0; m < depth_; ++m) {
    if (a.sym[m] != b.sym[m]) return symbol_distance(m + 1, a.sym[m], b.sym[m]);
  }
  return 0.0;
}

std::vector<Point> SequenceSpace::enumerate_points() const {
  std::vector<Point> out;
  std::vector<int> word(depth_, 0);
  for (;;) {
    Point p;
    p.sym = word;
    out.push_back(std::move(p));
    int m = depth_ - 1;
    while (m >= 0) {
      if (word[m] < top_[m]) {
        ++word[m];
        break;
      }
      word[m] = 0;
      --m;
    }
    if (m < 0) break;
  }
  return out;
}

std::shared_ptr<SequenceSpace> appendix_sequence_space(int depth) {
  return std::make_shared<SequenceSpace>(depth);
}

bool balls_disjoint(double dist, double r1, double r2) {
  return dist > (r1 + r2) * (1.0 + kRelTol);
}

Packing maximal_packing(const MetricSpace& space, const std::vector<Point>& pts, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("maximal_packing: delta must be positive");
  Packing p;
  p.common_radius = delta;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    bool ok = true;
    for (const Ball& b : p.balls) {
      if (!balls_disjoint(space.distance(pts[i], pts[b.center]), delta, delta)) {
        ok = false;
        break;
      }
    }
    if (ok) p.balls.push_back({i, delta});
  }
  return p;
}

std::vector<Packing> split_into_packings(const MetricSpace& space,
                                         const std::vector<Point>& centers,
                                         double delta, double lambda) {
  if (!(delta > 0)) throw std::invalid_argument("split_into_packings: delta must be positive");
  if (!(lambda > 0) || lambda > 1)
    throw std::invalid_argument("split_into_packings: lambda must be in (0, 1]");
  const int n = static_cast<int>(centers.size());
  // precondition: the lambda*delta shrinks are pairwise disjoint
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!balls_disjoint(space.distance(centers[i], centers[j]), lambda * delta, lambda * delta))
        throw std::invalid_argument(
            "split_into_packings: shrunken balls are not pairwise disjoint");

  std::vector<Packing> parts;
  std::vector<char> used(n, 0);
  int remaining = n;
  while (remaining > 0) {
    Packing part;
    part.common_radius = delta;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool ok = true;
      for (const Ball& b : part.balls) {
        if (!balls_disjoint(space.distance(centers[i], centers[b.center]), delta, delta)) {
          ok = false;
          break;
        }
      }
      if (ok) part.balls.push_back({i, delta});
    }
    if (part.balls.empty())
      throw std::runtime_error("split_into_packings: internal error, empty peel");
    for (const Ball& b : part.balls) used[b.center] = 1;
    remaining -= static_cast<int>(part.balls.size());
    parts.push_back(std::move(part));
  }
  return parts;
}

double packing_cardinality_bound(double gamma, int doubling_constant) {
  if (!(gamma > 1)) throw std::domain_error("packing_cardinality_bound: gamma must exceed 1");
  if (doubling_constant < 2)
    throw std::invalid_argument("packing_cardinality_bound: doubling constant must be >= 2");
  return std::pow(gamma, std::log2(static_cast<double>(doubling_constant)));
}

PartitionLevel build_partition(const MetricSpace& space, const std::vector<Point>& pts,
                               double delta, double lambda) {
  if (lambda < 2.0) throw std::invalid_argument("build_partition: lambda must be >= 2");
  Packing pk = maximal_packing(space, pts, delta);
  PartitionLevel lvl;
  lvl.scale = delta;
  lvl.lambda = lambda;
  lvl.cells.resize(pk.balls.size());
  for (int c = 0; c < static_cast<int>(pk.balls.size()); ++c) {
    lvl.cells[c].id = c;
    lvl.cells[c].ball = pk.balls[c];
  }
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    int best = -1;
    double best_d = 0;
    for (int c = 0; c < static_cast<int>(pk.balls.size()); ++c) {
      const double d = space.distance(pts[i], pts[pk.balls[c].center]);
      if (best < 0 || d < best_d - kRelTol) {
        best = c;
        best_d = d;
      }
    }
    // maximality of the packing puts every point within 2*delta of a center
    if (best < 0 || best_d > lambda * delta * (1.0 + kRelTol))
      throw std::runtime_error("build_partition: point escaped the enlarged balls");
    lvl.cells[best].members.push_back(i);
  }
  return lvl;
}

bool check_packing(const MetricSpace& space, const std::vector<Point>& pts, const Packing& p) {
  for (size_t i = 0; i < p.balls.size(); ++i) {
    if (p.balls[i].radius != p.common_radius) return false;
    for (size_t j = i + 1; j < p.balls.size(); ++j) {
      const double d = space.distance(pts[p.balls[i].center], pts[p.balls[j].center]);
      if (!balls_disjoint(d, p.balls[i].radius, p.balls[j].radius)) return false;
    }
  }
  return true;
}

}  // namespace locdim
