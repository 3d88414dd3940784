#include "locdim/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace locdim {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::shared_ptr<AtomicMeasure> gallery_dirac_cascade(const std::vector<int>& schedule,
                                                     int ambient_dim) {
  if (schedule.empty()) throw std::invalid_argument("dirac cascade: empty schedule");
  if (ambient_dim < 1 || ambient_dim > 3)
    throw std::invalid_argument("dirac cascade: ambient dimension must be 1..3");
  const int d = ambient_dim;
  std::vector<Point> pts;
  std::vector<double> masses;

  std::vector<double> lo(d, 0.0);
  double side = 1.0;
  double cube_mass = 1.0;
  for (int n : schedule) {
    if (n < 1 || n > 62) throw std::invalid_argument("dirac cascade: schedule entry out of range");
    long long per_axis = 1LL << n;
    double cells_ld = std::pow(static_cast<double>(per_axis), d);
    if (cells_ld > (1 << 22)) throw std::invalid_argument("dirac cascade: stage too fine");
    long long cells = 1;
    for (int a = 0; a < d; ++a) cells *= per_axis;
    double sub = side / static_cast<double>(per_axis);
    double atom_mass = cube_mass / static_cast<double>(cells);
    // all subcube centres except the max-corner cube, which stays in play
    for (long long c = 0; c + 1 < cells; ++c) {
      long long rem = c;
      Point p;
      p.x.resize(d);
      for (int a = 0; a < d; ++a) {
        long long i = rem % per_axis;
        rem /= per_axis;
        p.x[a] = lo[a] + (static_cast<double>(i) + 0.5) * sub;
      }
      pts.push_back(std::move(p));
      masses.push_back(atom_mass);
    }
    for (int a = 0; a < d; ++a) lo[a] += (static_cast<double>(per_axis) - 1.0) * sub;
    side = sub;
    cube_mass = atom_mass;
  }
  // residual mass of the still-unresolved cube, kept at its centre
  Point rest;
  rest.x.resize(d);
  for (int a = 0; a < d; ++a) rest.x[a] = lo[a] + 0.5 * side;
  pts.push_back(std::move(rest));
  masses.push_back(cube_mass);

  auto space = std::make_shared<EuclideanSpace>(d);
  return std::make_shared<AtomicMeasure>(space, std::move(pts), std::move(masses), false);
}

std::shared_ptr<AtomicMeasure> gallery_dirac_plus_lebesgue(int n_atoms) {
  if (n_atoms < 2) throw std::invalid_argument("dirac plus lebesgue: need at least 2 grid atoms");
  std::vector<Point> pts;
  std::vector<double> masses;
  pts.push_back(point1d(0.0));
  masses.push_back(0.5);
  for (int i = 0; i < n_atoms; ++i) {
    pts.push_back(point1d((i + 0.5) / n_atoms));
    masses.push_back(0.5 / n_atoms);
  }
  auto space = std::make_shared<EuclideanSpace>(1);
  return std::make_shared<AtomicMeasure>(space, std::move(pts), std::move(masses), false);
}

MeasureTree gallery_h_gt_q(int stages) {
  if (stages < 1 || stages > 5) throw std::invalid_argument("h-gt-q: stages must be 1..5");
  std::vector<MeasureTree::Cell> cells;
  MeasureTree::Cell root;
  root.mass = 1;
  root.left = 0;
  root.right = 1;
  root.diameter = 1;
  root.depth = 0;
  cells.push_back(root);
  std::vector<int> frontier{0};

  auto add_child = [&](int parent, double a, double b, double mass) {
    MeasureTree::Cell c;
    c.mass = mass;
    c.left = a;
    c.right = b;
    c.diameter = b - a;
    c.parent = parent;
    c.depth = cells[parent].depth + 1;
    cells[parent].children.push_back(static_cast<int>(cells.size()));
    cells.push_back(c);
    return static_cast<int>(cells.size()) - 1;
  };

  for (int k = 1; k <= stages; ++k) {
    const long long n_k = static_cast<long long>(k) * k;
    const int m_k = k;
    const double end_frac = std::pow(2.0, -static_cast<double>(n_k));
    const long long burst = 1LL << m_k;
    std::vector<int> next;
    for (int id : frontier) {
      double a = cells[id].left, b = cells[id].right, w = b - a, m = cells[id].mass;
      int left_end = add_child(id, a, a + end_frac * w, 0.5 * m);
      int right_end = add_child(id, b - end_frac * w, b, 0.5 * m);
      for (int e : {left_end, right_end}) {
        double ea = cells[e].left, ew = cells[e].right - cells[e].left;
        double cm = cells[e].mass / static_cast<double>(burst);
        double cw = ew / static_cast<double>(burst);
        for (long long j = 0; j < burst; ++j)
          next.push_back(add_child(e, ea + j * cw, ea + (j + 1) * cw, cm));
      }
    }
    frontier = std::move(next);
  }
  return MeasureTree(std::move(cells), true);
}

PerturbedTree gallery_q_gt_h(int stages) {
  if (stages < 1 || stages > 2)
    throw std::invalid_argument("q-gt-h: only 1 or 2 stages fit in 64-bit block counts");
  std::vector<MeasureTree::Cell> cells;
  MeasureTree::Cell root;
  root.mass = 1;
  root.left = 0;
  root.right = 1;
  root.diameter = 1;
  root.depth = 0;
  cells.push_back(root);

  auto add_child = [&](int parent, double a, double b, double mass) {
    MeasureTree::Cell c;
    c.mass = mass;
    c.left = a;
    c.right = b;
    c.diameter = b - a;
    c.parent = parent;
    c.depth = cells[parent].depth + 1;
    cells[parent].children.push_back(static_cast<int>(cells.size()));
    cells.push_back(c);
    return static_cast<int>(cells.size()) - 1;
  };

  std::vector<PerturbedStage> report;
  // construction intervals entering the stage, with their -log2 masses
  std::vector<int> frontier{0};
  long long M = 0;  // common -log2 length of the frontier intervals

  for (int k = 1; k <= stages; ++k) {
    const int n = k, l = k;
    const double q = 1.0 - 1.0 / (k + 1.0);
    const double t = (static_cast<double>(k) / (k + 1.0)) * (1.0 - q);

    double a_worst = 0;  // -log2 of the lightest frontier interval
    for (int id : frontier) a_worst = std::max(a_worst, -std::log2(cells[id].mass));
    // minimal integer burst exponent with (m(1-q) - q(l+a)) / (M+n*l+m) > t
    double m_min = (t * static_cast<double>(M + static_cast<long long>(n) * l) +
                    q * (l + a_worst)) /
                   (1.0 - q - t);
    long long m = static_cast<long long>(std::floor(m_min)) + 1;

    PerturbedStage st;
    st.k = k;
    st.q = q;
    st.n = n;
    st.l = l;
    st.m = m;
    st.rhs = t;
    st.lhs = (m * (1.0 - q) - q * (l + a_worst)) /
             static_cast<double>(M + static_cast<long long>(n) * l + m);
    report.push_back(st);

    std::vector<int> next;
    for (int id : frontier) {
      // l rounds of end-pair splitting at relative scale 2^{-n}
      std::vector<int> group{id};
      for (int round = 0; round < l; ++round) {
        std::vector<int> split;
        for (int g : group) {
          double a = cells[g].left, b = cells[g].right, w = b - a;
          double f = std::pow(2.0, -static_cast<double>(n));
          split.push_back(add_child(g, a, a + f * w, 0.5 * cells[g].mass));
          split.push_back(add_child(g, b - f * w, b, 0.5 * cells[g].mass));
        }
        group = std::move(split);
      }
      // leftmost member bursts uniformly; the rest keep only their outermost
      // subintervals of the matching length
      for (std::size_t gi = 0; gi < group.size(); ++gi) {
        int g = group[gi];
        double a = cells[g].left, b = cells[g].right, w = b - a;
        if (gi == 0) {
          if (m <= 10) {
            long long burst = 1LL << m;
            double cw = w / static_cast<double>(burst);
            double cm = cells[g].mass / static_cast<double>(burst);
            for (long long j = 0; j < burst; ++j)
              next.push_back(add_child(g, a + j * cw, a + (j + 1) * cw, cm));
          } else {
            if (m >= 63) throw std::invalid_argument("q-gt-h: burst exceeds 64-bit block count");
            cells[g].block_count = 1ULL << m;
            next.push_back(g);
          }
        } else {
          double f = std::pow(2.0, -static_cast<double>(m));
          next.push_back(add_child(g, a, a + f * w, 0.5 * cells[g].mass));
          next.push_back(add_child(g, b - f * w, b, 0.5 * cells[g].mass));
        }
      }
    }
    frontier = std::move(next);
    M += static_cast<long long>(n) * l + m;
  }
  return PerturbedTree{MeasureTree(std::move(cells), true), std::move(report)};
}

OnePointMeasure gallery_one_point(int stages) {
  if (stages < 1 || stages > 2)
    throw std::invalid_argument("one-point: only 1 or 2 stages are representable");
  OnePointMeasure out;
  // lambda_1 = 1/9; decay lambda_{k+1} <= lambda_k^4 / 256 with an integer
  // inverse square root, so the upper count bound lambda_k^{-1/8} dominates
  // 2 lambda_{k-1}^{-1/2} numerically at built stages
  out.lambda = {1.0 / 9.0, 1.0 / (1297.0 * 1297.0)};
  out.weight = {1.0, 1.0 / 12.0};

  std::vector<Point> pts;
  std::vector<double> masses;
  for (int k = 1; k <= stages; ++k) {
    double scale = std::pow(10.0, -k);
    for (int i = 1; i <= k; ++i) {
      double lam = out.lambda[i - 1];
      long long count = std::llround(1.0 / std::sqrt(lam)) + 1;
      double mass = std::pow(2.0, -i) * std::sqrt(lam) * out.weight[k - 1];
      for (long long j = 1; j <= count; ++j) {
        pts.push_back(point1d(scale * (1.0 - static_cast<double>(j) * lam)));
        masses.push_back(mass);
      }
    }
  }
  auto space = std::make_shared<EuclideanSpace>(1);
  out.measure = std::make_shared<AtomicMeasure>(space, std::move(pts), std::move(masses), false);
  out.lambda.resize(stages);
  out.weight.resize(stages);
  return out;
}

std::shared_ptr<AtomicMeasure> gallery_ring_measure(int rings, int atoms_per_ring) {
  if (rings < 1 || rings > 20) throw std::invalid_argument("rings: count must be 1..20");
  if (atoms_per_ring < 8) throw std::invalid_argument("rings: need at least 8 atoms per ring");
  std::vector<Point> pts;
  std::vector<double> masses;
  double fact = 1;
  for (int k = 1; k <= rings; ++k) {
    fact *= k;
    double radius = std::pow(2.0, -k);
    double atom_mass = 1.0 / (fact * atoms_per_ring);
    for (int t = 0; t < atoms_per_ring; ++t) {
      double ang = 2.0 * kPi * t / atoms_per_ring;
      pts.push_back(point2d(radius * std::cos(ang), radius * std::sin(ang)));
      masses.push_back(atom_mass);
    }
  }
  auto space = std::make_shared<EuclideanSpace>(2);
  return std::make_shared<AtomicMeasure>(space, std::move(pts), std::move(masses), false);
}

AppendixA gallery_appendix_a(int depth) {
  if (depth < 1 || depth > 4) throw std::invalid_argument("appendix space: depth must be 1..4");
  AppendixA out;
  out.space = appendix_sequence_space(depth);
  std::vector<Point> pts = out.space->enumerate_points();
  std::vector<double> masses(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    double m = 1;
    for (int n = 1; n <= depth; ++n) {
      int sym = pts[p].sym[n - 1];
      if (sym == 0)
        m *= std::pow(2.0, -n);
      else
        m *= (1.0 - std::pow(2.0, -n)) / static_cast<double>(out.space->top_symbol(n));
    }
    masses[p] = m;
  }
  out.measure = std::make_shared<AtomicMeasure>(out.space, std::move(pts), std::move(masses), false);
  out.no_zero.resize(out.measure->support_size());
  for (std::size_t p = 0; p < out.measure->support_size(); ++p) {
    const auto& sym = out.measure->support_point(p).sym;
    out.no_zero[p] = std::none_of(sym.begin(), sym.end(), [](int s) { return s == 0; }) ? 1 : 0;
  }
  return out;
}

double appendix_ratio_oracle(int n) {
  double a = 1.0 - std::pow(2.0, -n);
  return a / (a + n);
}

std::vector<AppendixRatioSample> appendix_density_ratios(const AppendixA& app) {
  const auto& mu = *app.measure;
  const auto& space = *app.space;
  int depth = space.depth();
  std::vector<AppendixRatioSample> out;
  for (std::size_t p = 0; p < mu.support_size(); ++p) {
    if (!app.no_zero[p]) continue;
    const auto& word = mu.support_point(p).sym;
    for (int n = 1; n <= depth; ++n) {
      double r_n = space.level_scale(n) * std::pow(2.0, -word[n - 1]);
      double cylinder = 0;
      for (std::size_t q = 0; q < mu.support_size(); ++q) {
        const auto& other = mu.support_point(q).sym;
        if (std::equal(word.begin(), word.begin() + n, other.begin())) cylinder += mu.support_mass(q);
      }
      AppendixRatioSample s;
      s.point = p;
      s.n = n;
      s.ratio = cylinder / mu.ball_mass(mu.support_point(p), r_n).mass;
      s.oracle = appendix_ratio_oracle(n);
      out.push_back(s);
    }
  }
  return out;
}

AppendixSpaceChecks appendix_space_checks(const AppendixA& app, int samples, std::uint64_t seed) {
  AppendixSpaceChecks out;
  const auto& mu = *app.measure;
  const auto& space = *app.space;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, mu.support_size() - 1);

  for (int s = 0; s < samples; ++s) {
    const auto& a = mu.support_point(pick(rng));
    const auto& b = mu.support_point(pick(rng));
    const auto& c = mu.support_point(pick(rng));
    double defect = space.distance(a, c) - space.distance(a, b) - space.distance(b, c);
    out.worst_triangle_defect = std::max(out.worst_triangle_defect, defect);
    if (defect > 1e-15) out.triangle = false;
  }

  std::uniform_int_distribution<int> pick_level(1, space.depth());
  for (int s = 0; s < samples; ++s) {
    const auto& x = mu.support_point(pick(rng));
    int n = pick_level(rng);
    int kmax = static_cast<int>(std::min<long long>(20, space.top_symbol(n)));
    std::uniform_int_distribution<int> pick_k(0, kmax);
    double r = space.level_scale(n) * std::pow(2.0, -pick_k(rng));
    // greedy max-coverage of the double ball by radius-r balls
    std::vector<std::size_t> inside;
    for (std::size_t p = 0; p < mu.support_size(); ++p)
      if (space.distance(x, mu.support_point(p)) <= 2 * r * (1.0 + kRelTol)) inside.push_back(p);
    std::vector<char> covered(inside.size(), 0);
    std::size_t left = inside.size();
    int rounds = 0;
    while (left > 0 && rounds < 6) {
      std::size_t best_center = 0, best_gain = 0;
      for (std::size_t c = 0; c < mu.support_size(); ++c) {
        std::size_t gain = 0;
        for (std::size_t i = 0; i < inside.size(); ++i)
          if (!covered[i] &&
              space.distance(mu.support_point(c), mu.support_point(inside[i])) <=
                  r * (1.0 + kRelTol))
            ++gain;
        if (gain > best_gain) best_gain = gain, best_center = c;
      }
      if (best_gain == 0) break;
      for (std::size_t i = 0; i < inside.size(); ++i)
        if (!covered[i] &&
            space.distance(mu.support_point(best_center), mu.support_point(inside[i])) <=
                r * (1.0 + kRelTol))
          covered[i] = 1, --left;
      ++rounds;
    }
    if (left > 0) rounds = 7;
    out.worst_cover_size = std::max(out.worst_cover_size, rounds);
    if (rounds > 3) out.doubling_by_3 = false;
  }
  return out;
}

}  // namespace locdim
