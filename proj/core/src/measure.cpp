#include "locdim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace locdim {

namespace {
constexpr double kMassTol = 1e-9;

bool inside_closed(double dist, double r) { return dist <= r * (1.0 + kRelTol); }

bool on_sphere(double dist, double r) {
  return std::abs(dist - r) <= std::max(r, 1.0) * 1e-12;
}
}  // namespace

AtomicMeasure::AtomicMeasure(std::shared_ptr<const MetricSpace> space, std::vector<Point> points,
                             std::vector<double> masses, bool normalize)
    : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("AtomicMeasure: null space");
  if (points.size() != masses.size() || points.empty())
    throw std::invalid_argument("AtomicMeasure: points/masses size mismatch or empty");
  // merge atoms with identical representation, preserving first-seen order
  std::map<std::pair<std::vector<double>, std::vector<int>>, std::size_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(masses[i] >= 0) || !std::isfinite(masses[i]))
      throw std::invalid_argument("AtomicMeasure: masses must be finite and nonnegative");
    auto key = std::make_pair(points[i].x, points[i].sym);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), points_.size());
      points_.push_back(std::move(points[i]));
      masses_.push_back(masses[i]);
    } else {
      masses_[it->second] += masses[i];
    }
  }
  total_ = 0;
  for (double m : masses_) total_ += m;
  if (!(total_ > 0)) throw std::invalid_argument("AtomicMeasure: zero total mass");
  if (normalize) {
    for (double& m : masses_) m /= total_;
    total_ = 1.0;
  }
}

MassQueryResult AtomicMeasure::ball_mass(const Point& x, double r) const {
  if (!(r >= 0)) throw std::invalid_argument("ball_mass: negative radius");
  MassQueryResult out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double d = space_->distance(x, points_[i]);
    if (inside_closed(d, r)) {
      out.mass += masses_[i];
      if (on_sphere(d, r)) out.boundary = true;
    }
  }
  return out;
}

double AtomicMeasure::distance(const Point& a, const Point& b) const {
  return space_->distance(a, b);
}

bool AtomicMeasure::line_embedded() const {
  auto* e = dynamic_cast<const EuclideanSpace*>(space_.get());
  return e != nullptr && e->dim() == 1;
}

AtomicMeasure AtomicMeasure::restrict(const std::vector<char>& keep) const {
  if (keep.size() != points_.size())
    throw std::invalid_argument("restrict: flag vector size mismatch");
  std::vector<Point> pts;
  std::vector<double> ms;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (keep[i]) {
      pts.push_back(points_[i]);
      ms.push_back(masses_[i]);
    }
  }
  if (pts.empty()) throw std::domain_error("restrict: empty restriction");
  return AtomicMeasure(space_, std::move(pts), std::move(ms), /*normalize=*/false);
}

MeasureTree::MeasureTree(std::vector<Cell> cells, bool embedded)
    : cells_(std::move(cells)), embedded_(embedded) {
  if (cells_.empty()) throw std::invalid_argument("MeasureTree: empty");
  if (cells_[0].parent != -1) throw std::invalid_argument("MeasureTree: cell 0 must be the root");
  int max_depth = 0;
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    Cell& c = cells_[i];
    if (!(c.mass >= 0) || !std::isfinite(c.mass))
      throw std::invalid_argument("MeasureTree: bad mass");
    if (i > 0) {
      if (c.parent < 0 || c.parent >= i)
        throw std::invalid_argument("MeasureTree: parents must precede children");
      c.depth = cells_[c.parent].depth + 1;
    } else {
      c.depth = 0;
    }
    if (embedded_) {
      if (!(c.right >= c.left)) throw std::invalid_argument("MeasureTree: inverted interval");
      c.diameter = c.right - c.left;
      if (i > 0) {
        const Cell& p = cells_[c.parent];
        const double tol = std::max(p.right - p.left, 1.0) * 1e-12;
        if (c.left < p.left - tol || c.right > p.right + tol)
          throw std::invalid_argument("MeasureTree: child escapes parent interval");
      }
    } else if (!(c.diameter >= 0)) {
      throw std::invalid_argument("MeasureTree: abstract tree needs explicit diameters");
    }
    max_depth = std::max(max_depth, c.depth);
  }
  levels_.assign(max_depth + 1, {});
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i)
    levels_[cells_[i].depth].push_back(i);
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    const Cell& c = cells_[i];
    if (!c.children.empty()) {
      double s = 0;
      for (int ch : c.children) {
        if (ch <= i || ch >= static_cast<int>(cells_.size()) || cells_[ch].parent != i)
          throw std::invalid_argument("MeasureTree: inconsistent child links");
        s += cells_[ch].mass;
      }
      if (std::abs(s - c.mass) > kMassTol * std::max(1.0, c.mass))
        throw std::invalid_argument("MeasureTree: children do not conserve mass");
    } else {
      leaves_.push_back(i);
    }
  }
}

double MeasureTree::total_mass() const { return cells_[0].mass; }

const std::vector<int>& MeasureTree::level(int n) const {
  if (n < 0 || n > max_level()) throw std::invalid_argument("MeasureTree: bad level");
  return levels_[n];
}

const Point& MeasureTree::support_point(std::size_t i) const {
  if (!embedded_) throw std::domain_error("MeasureTree: abstract tree has no point support");
  if (leaf_points_.empty()) {
    leaf_points_.reserve(leaves_.size());
    for (int id : leaves_) {
      leaf_points_.push_back(point1d(0.5 * (cells_[id].left + cells_[id].right)));
    }
  }
  return leaf_points_.at(i);
}

double MeasureTree::support_mass(std::size_t i) const { return cells_[leaves_.at(i)].mass; }

double MeasureTree::distance(const Point& a, const Point& b) const {
  return std::abs(a.x.at(0) - b.x.at(0));
}

void MeasureTree::accumulate_ball(int id, double lo, double hi, MassQueryResult& out) const {
  const Cell& c = cells_[id];
  if (c.right < lo || c.left > hi) {
    if (on_sphere(std::abs(c.right - lo), 0) || on_sphere(std::abs(c.left - hi), 0))
      out.boundary = true;
    return;
  }
  if (c.left >= lo && c.right <= hi) {
    out.mass += c.mass;
    if (c.left <= lo + (hi - lo) * 1e-12 || c.right >= hi - (hi - lo) * 1e-12)
      out.boundary = true;
    return;
  }
  if (!c.children.empty()) {
    for (int ch : c.children) accumulate_ball(ch, lo, hi, out);
    return;
  }
  if (c.block_count > 0) {
    // uniform block: mass proportional to overlap
    const double w = c.right - c.left;
    const double ov = std::min(hi, c.right) - std::max(lo, c.left);
    out.mass += (w > 0 ? c.mass * std::max(0.0, ov) / w : c.mass);
    out.boundary = true;
    return;
  }
  // unresolved leaf straddling the sphere: count it, flag the boundary
  out.mass += c.mass;
  out.boundary = true;
}

MassQueryResult MeasureTree::ball_mass1d(double x, double r) const {
  if (!embedded_) throw std::domain_error("MeasureTree: ball query needs an embedded tree");
  if (!(r >= 0)) throw std::invalid_argument("ball_mass: negative radius");
  MassQueryResult out;
  accumulate_ball(0, x - r, x + r, out);
  return out;
}

MassQueryResult MeasureTree::ball_mass(const Point& x, double r) const {
  return ball_mass1d(x.x.at(0), r);
}

std::vector<int> MeasureTree::cells_at_level_in_ball(double x, double r, int n) const {
  if (n < 0 || n > max_level() + 1) throw std::invalid_argument("MeasureTree: bad level");
  const bool whole = std::isinf(r);
  if (!whole && !embedded_)
    throw std::domain_error("MeasureTree: local cell query needs an embedded tree");
  const double lo = x - r, hi = x + r;
  std::vector<int> out;
  auto visit = [&](int id) {
    const Cell& c = cells_[id];
    if (whole || (c.right >= lo && c.left <= hi)) out.push_back(id);
  };
  // cells alive at level n: depth-n cells, plus shallower leaves (they
  // persist at all finer levels; callers expand block leaves themselves)
  if (n <= max_level())
    for (int id : levels_[n]) visit(id);
  for (int id : leaves_) {
    if (cells_[id].depth < n) visit(id);
  }
  return out;
}

double MeasureTree::partition_sum(double x, double r, int n, double q) const {
  double s = 0;
  auto add = [&](double m, double count) {
    // count > 1 stands for `count` equal cells of mass m each
    if (m <= 0) {
      if (q < 0)
        throw std::domain_error("partition_sum: zero-mass cell with negative q");
      if (q == 0) return;  // 0^q = 0 convention
      return;
    }
    s += count * std::pow(m, q);
  };
  for (int id : cells_at_level_in_ball(x, r, n)) {
    const Cell& c = cells_[id];
    if (c.block_count > 0 && c.depth < n) {
      // block children live at depth+1 and persist below it
      add(c.mass / static_cast<double>(c.block_count), static_cast<double>(c.block_count));
    } else {
      add(c.mass, 1.0);
    }
  }
  return s;
}

double MeasureTree::partition_entropy(double x, double r, int n) const {
  double s = 0;
  for (int id : cells_at_level_in_ball(x, r, n)) {
    const Cell& c = cells_[id];
    if (c.block_count > 0 && c.depth < n) {
      const double m = c.mass / static_cast<double>(c.block_count);
      if (m > 0) s += c.mass * std::log(m);
    } else if (c.mass > 0) {
      s += c.mass * std::log(c.mass);
    }
  }
  return s;
}

double MeasureTree::level_scale(int n) const {
  if (n < 0 || n > max_level()) throw std::invalid_argument("MeasureTree: bad level");
  double d = 0;
  for (int id : levels_[n]) d = std::max(d, cells_[id].diameter);
  for (int id : leaves_)
    if (cells_[id].depth < n) d = std::max(d, cells_[id].diameter);
  if (!(d > 0)) throw std::domain_error("MeasureTree: level has zero scale");
  return d;
}

int MeasureTree::leaf_containing(double x) const {
  if (!embedded_) throw std::domain_error("MeasureTree: abstract tree");
  int id = 0;
  const double tol = 1e-15;
  if (x < cells_[0].left - tol || x > cells_[0].right + tol) return -1;
  while (!cells_[id].children.empty()) {
    int next = -1;
    for (int ch : cells_[id].children) {
      if (x >= cells_[ch].left - tol && x <= cells_[ch].right + tol) {
        next = ch;
        break;
      }
    }
    if (next < 0) return -1;  // fell into a gap
    id = next;
  }
  return id;
}

int MeasureTree::ancestor_at_level(int cell_id, int n) const {
  int id = cell_id;
  while (id >= 0 && cells_[id].depth > n) id = cells_[id].parent;
  if (id < 0 || cells_[id].depth != n)
    throw std::invalid_argument("ancestor_at_level: no ancestor at that level");
  return id;
}

MeasureTree MeasureTree::subtree(int cell_id) const {
  if (cell_id < 0 || cell_id >= static_cast<int>(cells_.size()))
    throw std::invalid_argument("subtree: bad cell");
  std::vector<Cell> out;
  std::vector<int> stack = {cell_id};
  std::vector<int> remap(cells_.size(), -1);
  std::vector<int> order;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (auto it = cells_[id].children.rbegin(); it != cells_[id].children.rend(); ++it)
      stack.push_back(*it);
  }
  for (int id : order) {
    remap[id] = static_cast<int>(out.size());
    Cell c = cells_[id];
    c.parent = (id == cell_id) ? -1 : remap[cells_[id].parent];
    c.depth = cells_[id].depth - cells_[cell_id].depth;
    for (int& ch : c.children) ch = -1;  // re-linked below
    out.push_back(std::move(c));
  }
  for (int id : order) {
    Cell& c = out[remap[id]];
    c.children.clear();
    for (int ch : cells_[id].children) c.children.push_back(remap[ch]);
  }
  return MeasureTree(std::move(out), embedded_);
}

PartitionLevel MeasureTree::diameter_cut(int n, double C0, double C1) const {
  if (!(C0 > 0) || !(C1 > 0)) throw std::invalid_argument("diameter_cut: bad constants");
  const double threshold = C1 / (C0 * std::exp2(static_cast<double>(n)));
  PartitionLevel out;
  out.scale = threshold;
  out.lambda = C0 * C1 + 1.0;

  // leaf index lookup for member lists
  std::vector<int> leaf_pos(cells_.size(), -1);
  for (int i = 0; i < static_cast<int>(leaves_.size()); ++i) leaf_pos[leaves_[i]] = i;

  std::vector<int> chosen;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Cell& c = cells_[id];
    const double parent_diam =
        c.parent < 0 ? std::numeric_limits<double>::infinity() : cells_[c.parent].diameter;
    if (c.diameter <= threshold && parent_diam > threshold) {
      chosen.push_back(id);
      continue;
    }
    if (c.diameter > threshold && c.children.empty())
      throw std::domain_error("diameter_cut: tree too shallow for this level");
    if (c.diameter <= threshold) continue;  // ancestor already below threshold
    for (int ch : c.children) stack.push_back(ch);
  }
  std::sort(chosen.begin(), chosen.end());
  for (int id : chosen) {
    PartitionCell pc;
    pc.id = id;
    // collect leaves under the cell
    std::vector<int> st = {id};
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      if (cells_[v].children.empty()) {
        if (leaf_pos[v] >= 0) pc.members.push_back(leaf_pos[v]);
      } else {
        for (int ch : cells_[v].children) st.push_back(ch);
      }
    }
    std::sort(pc.members.begin(), pc.members.end());
    pc.ball.center = pc.members.empty() ? -1 : pc.members.front();
    pc.ball.radius = cells_[id].diameter / 2.0;
    out.cells.push_back(std::move(pc));
  }
  return out;
}

double MeasureTree::min_leaf_diameter() const {
  double d = std::numeric_limits<double>::infinity();
  for (int id : leaves_) d = std::min(d, cells_[id].diameter);
  return d;
}

double MeasureTree::max_parent_child_ratio() const {
  double r = 0;
  for (int i = 1; i < static_cast<int>(cells_.size()); ++i) {
    if (cells_[i].diameter > 0)
      r = std::max(r, cells_[cells_[i].parent].diameter / cells_[i].diameter);
  }
  return r;
}

}  // namespace locdim
