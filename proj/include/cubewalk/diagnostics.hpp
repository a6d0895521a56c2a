#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "cubewalk/chains.hpp"
#include "cubewalk/finite.hpp"

namespace cubewalk {

// Visit counts over decomposition cubes together with the exact reference
// law pi(Q) = vol(Q)/volK restricted to an enumeration; mass outside the
// enumerated cubes is compared against the frontier remainder.
struct WhitneyHistogram {
  std::unordered_map<DyadicCube, long, DyadicCubeHash> counts;
  long total = 0;
  std::unordered_map<DyadicCube, double, DyadicCubeHash> pi;
  double covered_pi = 0.0;  // sum of pi over enumerated cubes

  WhitneyHistogram() = default;
  WhitneyHistogram(const Enumeration& en, double volK);

  void add(const DyadicCube& q) {
    ++counts[q];
    ++total;
  }
};

// Binned total variation: (1/2) sum over enumerated cubes of
// |count/total - pi| plus half the remainder discrepancy. A lower bound on
// the true cube-law TV.
double tv_estimate(const WhitneyHistogram& hist);

// Multinomial bootstrap standard error of tv_estimate.
double tv_bootstrap_stderr(const WhitneyHistogram& hist, int resamples,
                           SplitMix64& rng);

// Largest empirical density ratio max_Q (count/total)/pi(Q) over visited
// enumerated cubes: the measured warmth of the sampled distribution.
struct WarmthReport {
  double m_hat = 0.0;
  long occupied_bins = 0;
};
WarmthReport warmth_report(const WhitneyHistogram& hist);

// Pearson test of point uniformity on K over a grid of `grid` bins per
// axis spanning [-R_inf, R_inf]^n. Bins fully inside K (all corners
// members) get exact volume; boundary bins are clipped by Monte-Carlo
// volume estimation (1e5 membership probes per bin). Bins with expected
// count < 5 are pooled.
struct ChiSquareReport {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  int bins = 0;  // after pooling
};
ChiSquareReport chi_square_uniformity(const std::vector<Eigen::VectorXd>& pts,
                                      const ConvexBody& body, int grid,
                                      SplitMix64& rng);

struct MixPoint {
  long step = 0;
  double tv = 0.0;
  double stderr_ = 0.0;
};

// Empirical TV decay of the cube chain from a point-mass start: `replicas`
// independent walks, binned over the enumeration at each checkpoint.
std::vector<MixPoint> mp_mixing_curve(const WhitneyContext& ctx,
                                      const Enumeration& en, double volK,
                                      const DyadicCube& start,
                                      const std::vector<long>& checkpoints,
                                      int replicas, SplitMix64& rng);

// Same for coordinate hit-and-run, binned over the uniformity grid; the
// reference is the exact/Monte-Carlo bin volume law.
std::vector<MixPoint> chr_mixing_curve(
    const ConvexBody& body,
    const std::function<Eigen::VectorXd(SplitMix64&)>& start_sampler,
    const std::vector<long>& checkpoints, int replicas, int grid,
    SplitMix64& rng);

// Burn-in defaults from the mixing bounds, with unit leading constant.
// Cube chain: C n^(4+2/p) (R/r)^2 log(M/eps).
long mp_burn_in_steps(int n, LpExponent p, double r_over, double warmth,
                      double eps, double c = 1.0);
// Coordinate hit-and-run from a warm start: C n^9 (R/r)^2 log(M/eps).
long chr_burn_in_steps(int n, double r_over, double warmth, double eps,
                       double c = 1.0);
// Coordinate hit-and-run from a point at distance delta from the boundary:
// C n^10 (R/r)^2 (log(R/(2 delta)) + tau log(6 tau/eps)),
// tau = ceil(2n log(6n/eps)).
long chr_point_burn_in_steps(int n, double r_over, double big_r, double delta,
                             double eps, double c = 1.0);

// Upper regularized incomplete gamma Q(a, x); chi-square tail probability
// is Q(dof/2, stat/2).
double regularized_gamma_q(double a, double x);

// Two-sided Kolmogorov-Smirnov p-value for values claimed uniform on (0,1).
double ks_uniform_pvalue(std::vector<double> values);

}  // namespace cubewalk
