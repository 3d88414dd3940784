#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "locdim/moran.hpp"
#include "test_helpers.hpp"

using namespace locdim;

namespace {
const double kLog23 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("spec validation") {
  SelfSimilarSpec bad;
  bad.ratios = {0.5};
  bad.weights = {1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.ratios = {0.3, 0.3};
  bad.weights = {0.6, 0.6};  // does not sum to 1
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(cantor_spec().validate());
}

TEST_CASE("moment equation root") {
  auto uniform = cantor_spec();
  // 2 * 2^-q * 3^tau = 1  =>  tau = (q - 1) log2/log3
  for (double q : {-1.0, 0.0, 2.0, 3.0}) {
    double tau = solve_tau(uniform, q);
    CHECK(tau == doctest::Approx((q - 1) * kLog23).epsilon(1e-10));
    CHECK(std::abs(moment_equation(uniform, q, tau)) <= 1e-10);
  }
  CHECK(solve_tau(uniform, 0.0) == doctest::Approx(-0.63093).epsilon(1e-5));
  CHECK(std::abs(solve_tau(uniform, 1.0)) <= 1e-12);

  auto biased = cantor_spec(1.0 / 3.0, 0.7);
  for (double q = -2; q <= 4; q += 0.5)
    CHECK(std::abs(moment_equation(biased, q, solve_tau(biased, q))) <= 1e-10);
}

TEST_CASE("information dimension formula") {
  CHECK(dim_formula(cantor_spec()) == doctest::Approx(kLog23).epsilon(1e-12));
  CHECK(dim_formula(cantor_spec(1.0 / 3.0, 0.7)) == doctest::Approx(0.55603).epsilon(1e-5));
  SelfSimilarSpec pr;
  pr.ratios = {0.25, 0.75};
  pr.weights = {0.25, 0.75};
  CHECK(dim_formula(pr) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("derivative of tau at one is the information dimension") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  const double h = 1e-4;
  double central = (solve_tau(spec, 1 + h) - solve_tau(spec, 1 - h)) / (2 * h);
  CHECK(central == doctest::Approx(dim_formula(spec)).epsilon(1e-6));
}

TEST_CASE("alpha range") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  auto [lo, hi] = alpha_range(spec);
  CHECK(lo == doctest::Approx(std::log(0.7) / std::log(1.0 / 3.0)).epsilon(1e-12));
  CHECK(hi == doctest::Approx(std::log(0.3) / std::log(1.0 / 3.0)).epsilon(1e-12));

  SelfSimilarSpec mixed;
  mixed.ratios = {0.25, 0.5};
  mixed.weights = {0.5, 0.5};
  auto [lo2, hi2] = alpha_range(mixed);
  CHECK(lo2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hi2 == doctest::Approx(1.0).epsilon(1e-12));

  // secant surrogate for the endpoints at large |q|
  auto secant_lo = solve_tau(spec, 40) - solve_tau(spec, 39);
  auto secant_hi = solve_tau(spec, -39) - solve_tau(spec, -40);
  CHECK(secant_lo == doctest::Approx(lo).epsilon(1e-3));
  CHECK(secant_hi == doctest::Approx(hi).epsilon(1e-3));
}

TEST_CASE("exact spectrum touches the diagonal at q = 1") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  const double a1 = dim_formula(spec);
  auto pts = exact_spectrum(spec, {a1});
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].value == doctest::Approx(a1).epsilon(1e-9));
  CHECK(pts[0].arg_q == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(exact_spectrum(spec, {0.1}), std::domain_error);

  // uniform weights collapse the spectrum to a point
  auto uniform = cantor_spec();
  auto upts = exact_spectrum(uniform, {kLog23});
  CHECK(upts[0].value == doctest::Approx(kLog23).epsilon(1e-9));
}

TEST_CASE("tree construction geometry") {
  auto tree = build_selfsimilar_tree(cantor_spec(), 3);
  CHECK(tree.leaves().size() == 8);
  CHECK(tree.max_level() == 3);
  // outermost children touch the parent's endpoints
  const auto& c0 = tree.cell(tree.cell(0).children[0]);
  const auto& c1 = tree.cell(tree.cell(0).children[1]);
  CHECK(c0.left == doctest::Approx(0.0));
  CHECK(c0.right == doctest::Approx(1.0 / 3));
  CHECK(c1.left == doctest::Approx(2.0 / 3));
  CHECK(c1.right == doctest::Approx(1.0));
  for (int id : tree.leaves()) CHECK(tree.cell(id).mass == doctest::Approx(1.0 / 8));

  auto biased = build_selfsimilar_tree(cantor_spec(1.0 / 3.0, 0.7), 12);
  double max_mass = 0;
  for (int id : biased.leaves()) max_mass = std::max(max_mass, biased.cell(id).mass);
  CHECK(max_mass == doctest::Approx(std::pow(0.7, 12)).epsilon(1e-12));

  CHECK_THROWS_AS(build_selfsimilar_tree(cantor_spec(), 0), std::invalid_argument);
}

TEST_CASE("level schedules interpolate towards the limit") {
  SelfSimilarSpec spec = cantor_spec();
  spec.start_weights = {0.9, 0.1};
  auto w1 = spec.weights_at_level(1);
  auto w8 = spec.weights_at_level(8);
  CHECK(w1[0] > w8[0]);
  CHECK(w8[0] == doctest::Approx(0.5).epsilon(0.01));
  CHECK(w1[0] + w1[1] == doctest::Approx(1.0));
}

TEST_CASE("structural audit of the cantor tree") {
  auto tree = build_selfsimilar_tree(cantor_spec(), 8);
  auto v = validate_moran(tree);
  CHECK(v.all());
  CHECK(v.C0 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(v.C1 == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("structural audit flags touching siblings") {
  std::vector<MeasureTree::Cell> cells(3);
  cells[0] = {1.0, 0.0, 1.0, 1.0, -1, 0, {1, 2}, 0};
  cells[1] = {0.5, 0.0, 0.5, 0.5, 0, 1, {}, 0};
  cells[2] = {0.5, 0.5, 1.0, 0.5, 0, 1, {}, 0};
  MeasureTree touching(cells, true);
  auto v = validate_moran(touching);
  CHECK_FALSE(v.separation.pass);
  CHECK_FALSE(v.separation.witness.empty());
  CHECK_FALSE(v.all());
}

TEST_CASE("typical leaf sampling") {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  auto tree = build_selfsimilar_tree(spec, 12);
  auto leaves = sample_typical_leaves(tree, spec.weights, 30, 1.0, 99);
  CHECK(leaves.size() == 30);
  CHECK(std::set<int>(leaves.begin(), leaves.end()).size() == 30);
  // recompute branch counts along each path and re-verify the band
  for (int id : leaves) {
    std::vector<int> path;
    int cur = id;
    while (tree.cell(cur).parent >= 0) {
      int par = tree.cell(cur).parent;
      const auto& ch = tree.cell(par).children;
      path.push_back(static_cast<int>(std::find(ch.begin(), ch.end(), cur) - ch.begin()));
      cur = par;
    }
    std::reverse(path.begin(), path.end());
    std::vector<int> counts(2, 0);
    for (std::size_t n = 0; n < path.size(); ++n) {
      ++counts[path[n]];
      for (int b = 0; b < 2; ++b)
        CHECK(std::abs(counts[b] - static_cast<double>(n + 1) * spec.weights[b]) <= 1.0 + 1e-12);
    }
  }
  // seeded determinism
  auto again = sample_typical_leaves(tree, spec.weights, 30, 1.0, 99);
  CHECK(leaves == again);
  CHECK_THROWS_AS(sample_typical_leaves(tree, {}, 10, 1.0, 1), std::invalid_argument);
}
