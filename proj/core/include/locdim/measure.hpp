#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "locdim/metric.hpp"

namespace locdim {

struct MassQueryResult {
  double mass = 0;
  // true when some atom or cell sits on (or straddles) the query sphere, so
  // the closed-ball mass is sensitive to the boundary convention
  bool boundary = false;
};

// Common interface over the two measure backends (finite atomic measures and
// mass-labelled cell trees).  Support points are the atoms, respectively the
// leaf-cell representatives; they double as candidate centers for packing
// based estimators.
class Measure {
 public:
  virtual ~Measure() = default;
  virtual double total_mass() const = 0;
  virtual MassQueryResult ball_mass(const Point& x, double r) const = 0;
  virtual std::size_t support_size() const = 0;
  virtual const Point& support_point(std::size_t i) const = 0;
  virtual double support_mass(std::size_t i) const = 0;
  virtual double distance(const Point& a, const Point& b) const = 0;
  virtual int doubling_hint() const = 0;
  // true when the support lives on the real line (enables exact
  // interval-style selection in packing counts)
  virtual bool line_embedded() const = 0;
};

class AtomicMeasure final : public Measure {
 public:
  // Coincident atoms (identical representation) are merged; masses are
  // normalized to total 1 unless normalize is false.
  AtomicMeasure(std::shared_ptr<const MetricSpace> space, std::vector<Point> points,
                std::vector<double> masses, bool normalize = true);

  double total_mass() const override { return total_; }
  MassQueryResult ball_mass(const Point& x, double r) const override;
  std::size_t support_size() const override { return points_.size(); }
  const Point& support_point(std::size_t i) const override { return points_[i]; }
  double support_mass(std::size_t i) const override { return masses_[i]; }
  double distance(const Point& a, const Point& b) const override;
  int doubling_hint() const override { return space_->doubling_hint(); }
  bool line_embedded() const override;

  const MetricSpace& space() const { return *space_; }
  std::shared_ptr<const MetricSpace> space_ptr() const { return space_; }

  // Sub-measure keeping the flagged atoms; masses are not renormalized.
  AtomicMeasure restrict(const std::vector<char>& keep) const;

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<Point> points_;
  std::vector<double> masses_;
  double total_ = 0;
};

// Rooted cell tree with masses and (optionally) an interval embedding on the
// line.  Cells at one depth are pairwise disjoint; children refine their
// parent.  A cell may instead summarize `block_count` equal uniform children
// (used when a construction stage calls for astronomically many equal
// subcells); such blocks are treated as uniformly distributed mass.
class MeasureTree final : public Measure {
 public:
  struct Cell {
    double mass = 0;
    double left = 0, right = 0;  // interval embedding
    double diameter = 0;
    int parent = -1;
    int depth = 0;
    std::vector<int> children;
    std::uint64_t block_count = 0;
  };

  static constexpr double kWholeSpace = std::numeric_limits<double>::infinity();

  MeasureTree(std::vector<Cell> cells, bool embedded);

  double total_mass() const override;
  MassQueryResult ball_mass(const Point& x, double r) const override;
  std::size_t support_size() const override { return leaves_.size(); }
  const Point& support_point(std::size_t i) const override;
  double support_mass(std::size_t i) const override;
  double distance(const Point& a, const Point& b) const override;
  int doubling_hint() const override { return 4; }  // subsets of the line
  bool line_embedded() const override { return embedded_; }

  bool embedded() const { return embedded_; }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<int>& level(int n) const;
  const Cell& cell(int id) const { return cells_[id]; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<int>& leaves() const { return leaves_; }

  MassQueryResult ball_mass1d(double x, double r) const;

  // Sum of mu(Q)^q over the level-n cells meeting B(x, r) (whole support
  // when r is kWholeSpace).  Zero-mass cells are skipped for q >= 0 and
  // rejected for q < 0.
  double partition_sum(double x, double r, int n, double q) const;

  // Sum of mu(Q) log mu(Q) over the same cell family.
  double partition_entropy(double x, double r, int n) const;

  // Largest diameter among level-n cells (the level's scale).
  double level_scale(int n) const;

  std::vector<int> cells_at_level_in_ball(double x, double r, int n) const;
  int leaf_containing(double x) const;  // -1 when x falls in a gap
  int ancestor_at_level(int cell_id, int n) const;

  // Sub-tree rooted at the given cell, re-rooted at depth 0; masses kept.
  MeasureTree subtree(int cell_id) const;

  // Cut the tree at diameter threshold C1 / (C0 * 2^n): take every cell with
  // diam <= threshold < parent diam.  Requires the tree to be deep enough.
  PartitionLevel diameter_cut(int n, double C0, double C1) const;

  double min_leaf_diameter() const;
  double max_parent_child_ratio() const;

 private:
  std::vector<Cell> cells_;
  bool embedded_ = true;
  std::vector<std::vector<int>> levels_;
  std::vector<int> leaves_;
  mutable std::vector<Point> leaf_points_;

  void accumulate_ball(int id, double lo, double hi, MassQueryResult& out) const;
};

}  // namespace locdim
