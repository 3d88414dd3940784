#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "locdim/moran.hpp"
#include "locdim/spectrum.hpp"
#include "test_helpers.hpp"

using namespace locdim;
using locdim::testing::leaf_mid;
using locdim::testing::lebesgue_proxy;

namespace {
const double kLog23 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("packing moment sums") {
  auto space = std::make_shared<EuclideanSpace>(1);
  AtomicMeasure dirac(space, {point1d(0)}, {1.0});
  CHECK(s_q_packing(dirac, point1d(0), 1.0, 0.1, 2.0) == doctest::Approx(1.0));

  auto mu = lebesgue_proxy(4096);
  // q = 0 counts balls in a maximal packing: about 2r / 2delta of them
  double count = s_q_packing(*mu, point1d(0.5), 0.25, 1.0 / 32, 0.0);
  CHECK(count == doctest::Approx(8.0).epsilon(0.3));
  CHECK_THROWS_AS(s_q_packing(*mu, point1d(0.5), 0.25, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("tree exponents match the closed form") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  auto tree = build_selfsimilar_tree(spec, 10);
  for (double q : {0.0, 0.5, 2.0}) {
    auto fit = tau_global_tree(tree, q, 2, 10);
    CHECK(fit.slope == doctest::Approx(solve_tau(spec, q)).epsilon(1e-10));
  }
  // exact vanishing at q = 1
  CHECK(std::abs(tau_global_tree(tree, 1.0, 1, 10).slope) <= 1e-12);
  // local window agrees with the global one on a self-similar tree
  auto loc = tau_local_tree(tree, 0.0, 0.5, 2.0, 2, 10);
  CHECK(loc.slope == doctest::Approx(solve_tau(spec, 2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(tau_local_tree(tree, 0.0, 0.5, 2.0, 5, 3), std::invalid_argument);
}

TEST_CASE("atomic exponents: proxy and atom-plus-proxy") {
  auto mu = lebesgue_proxy(2048);
  auto fit = tau_global_atomic(*mu, 2.0, geometric_grid(0.125, 0.5, 6));
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.1));

  // adding a half dirac at 0 collapses the q = 2 exponent towards 0
  auto space = std::make_shared<EuclideanSpace>(1);
  std::vector<Point> pts = {point1d(0)};
  std::vector<double> masses = {0.5};
  for (int i = 0; i < 2048; ++i) {
    pts.push_back(point1d((i + 0.5) / 2048));
    masses.push_back(0.5 / 2048);
  }
  AtomicMeasure mixed(space, pts, masses, false);
  auto fit2 = tau_global_atomic(mixed, 2.0, geometric_grid(0.125, 0.5, 9));
  CHECK(std::abs(fit2.slope) <= 0.15);
  CHECK_THROWS_AS(tau_global_atomic(mixed, 2.0, {0.1}), std::invalid_argument);
}

TEST_CASE("pointwise ball dimensions") {
  auto space = std::make_shared<EuclideanSpace>(1);
  AtomicMeasure dirac(space, {point1d(0)}, {1.0});
  auto scales = geometric_grid(0.25, 0.5, 8);
  CHECK(local_dim_ball(dirac, point1d(0), scales).slope == doctest::Approx(0.0));

  auto tree = build_selfsimilar_tree(cantor_spec(), 10);
  std::vector<double> cantor_scales = geometric_grid(1.0 / 3, 1.0 / 3, 8);
  CHECK(local_dim_ball(tree, point1d(0), cantor_scales).slope ==
        doctest::Approx(kLog23).epsilon(0.05));

  auto mu = lebesgue_proxy(4096);
  CHECK(local_dim_ball(*mu, point1d(0.37), geometric_grid(0.2, 0.5, 8)).slope ==
        doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(local_dim_ball(dirac, point1d(5), scales), std::domain_error);
}

TEST_CASE("partition dimension along a leaf") {
  auto tree = build_selfsimilar_tree(cantor_spec(), 10);
  for (int id : {tree.leaves().front(), tree.leaves().back()}) {
    auto fit = local_dim_partition(tree, leaf_mid(tree, id), 2, 10);
    CHECK(fit.slope == doctest::Approx(kLog23).epsilon(1e-10));
  }
  CHECK_THROWS_AS(local_dim_partition(tree, 0.5, 2, 10), std::domain_error);  // gap point
}

TEST_CASE("entropy dimension") {
  auto uniform = build_selfsimilar_tree(cantor_spec(), 10);
  auto res = entropy_dim(uniform, 0.0, MeasureTree::kWholeSpace, 2, 10);
  CHECK(res.lower == doctest::Approx(kLog23).epsilon(0.02));
  CHECK(res.upper == doctest::Approx(kLog23).epsilon(0.02));
  CHECK(res.slope == doctest::Approx(kLog23).epsilon(1e-10));

  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  auto biased = build_selfsimilar_tree(spec, 10);
  auto res2 = entropy_dim(biased, 0.0, MeasureTree::kWholeSpace, 2, 10);
  CHECK(res2.slope == doctest::Approx(dim_formula(spec)).epsilon(1e-10));

  // a chain tree concentrates all mass: entropy dimension zero
  std::vector<MeasureTree::Cell> cells(3);
  cells[0] = {1.0, 0.0, 1.0, 1.0, -1, 0, {1}, 0};
  cells[1] = {1.0, 0.0, 0.5, 0.5, 0, 1, {2}, 0};
  cells[2] = {1.0, 0.0, 0.25, 0.25, 1, 2, {}, 0};
  MeasureTree chain(cells, true);
  auto res3 = entropy_dim(chain, 0.1, MeasureTree::kWholeSpace, 1, 2);
  CHECK(res3.slope == doctest::Approx(0.0));
}

TEST_CASE("curve checks on exact tree sums") {
  auto tree = build_selfsimilar_tree(cantor_spec(1.0 / 3.0, 0.7), 10);
  std::vector<double> qs;
  for (double q = 0; q <= 4.0 + 1e-9; q += 0.25) qs.push_back(q);
  auto curve = spectrum_curve_tree(tree, 0.0, MeasureTree::kWholeSpace, qs, 1, 10);
  auto rep = check_spectrum_curve(curve);
  CHECK(rep.concave);
  CHECK(rep.tau1_zero);
  CHECK(rep.bounds);
  CHECK(std::abs(rep.tau_at_1) <= 1e-9);

  // breaking concavity must be detected
  auto bent = curve;
  bent.samples[4].tau += 0.05;
  CHECK_FALSE(check_spectrum_curve(bent).concave);
}

TEST_CASE("legendre transform of a sampled curve") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  auto tree = build_selfsimilar_tree(spec, 10);
  std::vector<double> qs;
  for (double q = -6; q <= 6.0 + 1e-9; q += 0.1) qs.push_back(q);
  auto curve = spectrum_curve_tree(tree, 0.0, MeasureTree::kWholeSpace, qs, 1, 10);
  const double a1 = dim_formula(spec);
  auto pts = legendre_transform(curve, {a1, kLog23 + 1e-3});
  REQUIRE(pts.size() == 2);
  // f(alpha(1)) = alpha(1); sampled curve gets close
  CHECK(pts[0].value == doctest::Approx(a1).epsilon(0.01));
  CHECK_FALSE(pts[0].boundary);
  // the peak value is the box dimension of the support; the sampled curve
  // carries a depth-10 fit bias at large |q|, so the tolerance is loose
  CHECK(pts[1].value == doctest::Approx(kLog23).epsilon(0.05));
  CHECK_THROWS_AS(legendre_transform(SpectrumCurve{}, {0.5}), std::invalid_argument);
}

TEST_CASE("global exponent equals the minimum local one on a homogeneous tree") {
  auto tree = build_selfsimilar_tree(cantor_spec(), 9);
  auto rep = check_global_is_min_local(tree, 2.0, {0.0, 1.0 / 27, 1.0}, 0.1, 2, 9);
  CHECK(std::abs(rep.max_gap) <= 0.02);
  CHECK(rep.local_taus.size() == 3);
}

TEST_CASE("dimension sandwich on the uniform tree") {
  auto tree = build_selfsimilar_tree(cantor_spec(), 10);
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i)
    xs.push_back(leaf_mid(tree, tree.leaves()[(i * 101) % tree.leaves().size()]));
  auto rep = check_dim_sandwich(tree, xs, 0.9, 1.1, 2, 10, 0.05);
  CHECK(rep.pointwise_violations == 0);
  CHECK(rep.mean_satisfied);
  CHECK(rep.dim_lo == doctest::Approx(kLog23).epsilon(1e-6));
  CHECK(rep.dim_hi == doctest::Approx(kLog23).epsilon(1e-6));
  CHECK_THROWS_AS(check_dim_sandwich(tree, xs, 1.1, 0.9, 2, 10, 0.05), std::invalid_argument);
}
