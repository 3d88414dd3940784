#pragma once

#include <memory>
#include <vector>

namespace locdim {

// A point is either a coordinate vector (Euclidean backends) or a finite
// symbol word (sequence-space backend).  A given space reads exactly one of
// the two representations.
struct Point {
  std::vector<double> x;
  std::vector<int> sym;
};

Point point1d(double v);
Point point2d(double a, double b);

class MetricSpace {
 public:
  virtual ~MetricSpace() = default;
  virtual double distance(const Point& a, const Point& b) const = 0;

  // Upper bound used for packing-cardinality estimates: any ball of radius
  // 2r is covered by at most this many balls of radius r.
  int doubling_hint() const { return doubling_hint_; }

 protected:
  explicit MetricSpace(int hint) : doubling_hint_(hint) {}
  int doubling_hint_;
};

class EuclideanSpace final : public MetricSpace {
 public:
  explicit EuclideanSpace(int dim);
  double distance(const Point& a, const Point& b) const override;
  int dim() const { return dim_; }

 private:
  int dim_;
};

// Product of growing alphabets I_n = {0, ..., n*2^n} carrying a
// first-difference metric with per-level scales eps_1 = 1,
// eps_{n+1} = 2^{-n*2^n} * eps_n.  Symbols at level n are compared with
//   d_n(i,j) = 0            if i == j,
//   d_n(i,0) = eps_n 2^{-i},
//   d_n(i,j) = eps_n (2^{-i} + 2^{-j})  otherwise.
// The space is doubling with constant 3.
class SequenceSpace final : public MetricSpace {
 public:
  explicit SequenceSpace(int depth);
  double distance(const Point& a, const Point& b) const override;

  int depth() const { return depth_; }
  long long top_symbol(int level) const;   // N_n, level in [1, depth]
  double level_scale(int level) const;     // eps_n
  double symbol_distance(int level, int i, int j) const;

  // All words of length depth(), enumerated in lexicographic order.
  std::vector<Point> enumerate_points() const;

 private:
  int depth_;
  std::vector<long long> top_;       // top_[n-1] = N_n
  std::vector<double> log2_eps_;     // log2(eps_n)
};

std::shared_ptr<SequenceSpace> appendix_sequence_space(int depth);

struct Ball {
  int center = -1;  // index into the point set the collection refers to
  double radius = 0;
};

struct Packing {
  std::vector<Ball> balls;
  double common_radius = 0;
};

struct PartitionCell {
  int id = -1;
  std::vector<int> members;  // point indices assigned to this cell
  Ball ball;                 // defining ball (cell sits inside lambda * ball)
};

struct PartitionLevel {
  double scale = 0;
  double lambda = 2;
  std::vector<PartitionCell> cells;
};

// Closed balls: touching balls are not disjoint.  The relative tolerance
// guards against floating-point noise across widely different scales.
inline constexpr double kRelTol = 1e-12;

bool balls_disjoint(double dist, double r1, double r2);

// Greedy maximal packing: sweep the points in stored order, keep a point
// whenever its delta-ball is disjoint from all kept ones.
Packing maximal_packing(const MetricSpace& space, const std::vector<Point>& pts, double delta);

// Split a collection of delta-balls whose lambda*delta shrinks are disjoint
// into maximal disjoint sub-collections (greedy peeling).  The number of
// parts is bounded by (3/lambda)^(log2 N).
std::vector<Packing> split_into_packings(const MetricSpace& space,
                                         const std::vector<Point>& centers,
                                         double delta, double lambda);

// Max cardinality of an (r/gamma)-packing of a ball of radius r in a space
// with doubling constant N: gamma^(log2 N).
double packing_cardinality_bound(double gamma, int doubling_constant);

// delta-partition of the point set: cells of a greedy maximal delta-packing,
// every point assigned to the nearest packing center (lowest index wins
// ties).  Each cell contains its defining ball's points and sits inside the
// lambda-enlarged ball; requires lambda >= 2.
PartitionLevel build_partition(const MetricSpace& space, const std::vector<Point>& pts,
                               double delta, double lambda = 2.0);

bool check_packing(const MetricSpace& space, const std::vector<Point>& pts, const Packing& p);

}  // namespace locdim
