#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "locdim/measure.hpp"
#include "locdim/moran.hpp"

namespace locdim {

// Finite-depth generators for the counterexample measures.  Every generator
// is deterministic in its parameters; infinite constructions are truncated at
// an explicit stage count and the residual mass is kept as a single atom so
// totals stay exact.

// Cascade of Dirac masses on [0,1]^d: at each stage the one remaining cube is
// subdivided 2^{n_k} ways per axis, all but one subcube receive a point mass
// at their centre, and the construction recurses into the remaining cube.
// Globally the measure scales like an absolutely continuous one for q < 1,
// yet every stored atom is isolated, so local scaling exponents vanish.
std::shared_ptr<AtomicMeasure> gallery_dirac_cascade(const std::vector<int>& schedule,
                                                     int ambient_dim = 1);

// Half a Dirac mass at the origin plus a uniform grid carrying the other
// half: the global L^q exponent collapses to the worst local one.
std::shared_ptr<AtomicMeasure> gallery_dirac_plus_lebesgue(int n_atoms);

// Two-phase tree on [0,1]: per stage k an end-pair split at relative scale
// 2^{-k^2} (mass 1/2 each) followed by a uniform burst into 2^k equal cells.
// Burst scales make the disjoint-ball count behave like 1/delta while the
// partition sums stay flat, so the homogeneity exponent exceeds the L^q one.
MeasureTree gallery_h_gt_q(int stages);

// Per-stage audit record for the perturbed zero-dimensional tree: the stage's
// moment-sum exponent bound lhs > rhs holds by the choice of burst size m.
struct PerturbedStage {
  int k = 0;
  double q = 0;        // q_k = 1 - 1/(k+1)
  int n = 0, l = 0;    // end-split scale exponent and iteration count
  long long m = 0;     // minimal burst exponent satisfying the bound
  double lhs = 0;      // (m(1-q) - q(l + a)) / (M + n*l + m), a = -log2 min mass
  double rhs = 0;      // (k/(k+1)) (1-q)
};

struct PerturbedTree {
  MeasureTree tree;
  std::vector<PerturbedStage> stages;
};

// Nearly zero-dimensional end-pair tree where one interval per stage bursts
// into 2^{m_k} equal cells with m_k chosen minimally so the stage-k moment
// sum at q_k beats (k/(k+1))(1-q_k).  Bursts beyond 2^10 children are stored
// as uniform block cells; at most 2 stages fit in 64-bit block counts.
PerturbedTree gallery_q_gt_h(int stages);

struct OnePointMeasure {
  std::shared_ptr<AtomicMeasure> measure;  // unnormalized
  std::vector<double> lambda;              // lambda_k, lambda_k^{-1/2} integer
  std::vector<double> weight;              // m_k
};

// Dirac sums clustered at scales 10^{-k} near the origin whose disjoint-ball
// counts oscillate: at delta = lambda_k/3 at least lambda_k^{-1/2} balls fit,
// at delta = 2 sqrt(lambda_k) no more than lambda_k^{-1/8} do.
OnePointMeasure gallery_one_point(int stages);

// Concentric circles of radius 2^{-k} and mass 1/k! around the origin,
// discretized to uniform atoms: the disjoint-ball count at the origin is
// sensitive to the reference-ball factor gamma.
std::shared_ptr<AtomicMeasure> gallery_ring_measure(int rings, int atoms_per_ring = 1024);

// Truncated product-of-growing-alphabets space with the biased cylinder
// masses (symbol 0 takes 2^{-n} of its parent at level n, the others share
// the rest equally) and the no-zero-symbol subset.
struct AppendixA {
  std::shared_ptr<SequenceSpace> space;
  std::shared_ptr<AtomicMeasure> measure;
  std::vector<char> no_zero;  // per support point: no symbol is 0
};

AppendixA gallery_appendix_a(int depth);

// Closed form (1 - 2^{-n}) / (1 - 2^{-n} + n) for the density ratio of the
// no-zero set in the matched ball at level n.
double appendix_ratio_oracle(int n);

struct AppendixRatioSample {
  std::size_t point = 0;  // support index of the no-zero word
  int n = 0;
  double ratio = 0;   // cylinder mass over ball mass at the matched radius
  double oracle = 0;
};

// For every stored no-zero word and every level n <= depth, the mass of the
// level-n cylinder over the mass of the ball of radius eps_n 2^{-i_n}.
std::vector<AppendixRatioSample> appendix_density_ratios(const AppendixA& app);

struct AppendixSpaceChecks {
  bool triangle = true;
  bool doubling_by_3 = true;
  double worst_triangle_defect = 0;  // max of d(a,c) - d(a,b) - d(b,c)
  int worst_cover_size = 0;          // balls needed to cover a double ball
};

// Sampled triangle inequalities and the cover-a-double-ball-with-3 property.
AppendixSpaceChecks appendix_space_checks(const AppendixA& app, int samples, std::uint64_t seed);

}  // namespace locdim
