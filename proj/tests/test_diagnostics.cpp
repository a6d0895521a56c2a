#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "cubewalk/diagnostics.hpp"
#include "oracles.hpp"

using namespace cubewalk;

namespace {

std::shared_ptr<AxisBox> square(double r, int n = 2) {
  return std::make_shared<AxisBox>(Eigen::VectorXd::Constant(n, -r),
                                   Eigen::VectorXd::Constant(n, r));
}

struct Setup {
  std::shared_ptr<AxisBox> body;
  WhitneyContext ctx;
  Enumeration en;
};

Setup square_setup(int depth) {
  auto body = square(0.4);
  WhitneyContext ctx = WhitneyContext::make(body, LpExponent::infinity());
  Enumeration en = enumerate_cubes(ctx, depth);
  return {body, ctx, en};
}

}  // namespace

TEST_CASE("tv estimate has the right closed forms on crafted histograms") {
  Setup s = square_setup(5);
  const double volK = 0.64;

  // counts exactly proportional to cube volume over the enumeration: the
  // only discrepancy left is the unexplored remainder, counted once
  WhitneyHistogram prop(s.en, volK);
  for (const DyadicCube& q : s.en.complete) {
    const long c = std::lround(q.volume() * (1 << 10) * (1 << 10));
    prop.counts[q] = c;
    prop.total += c;
  }
  const double covered = prop.covered_pi;
  CHECK(covered == doctest::Approx(s.en.complete_volume() / volK).epsilon(1e-14));
  CHECK(tv_estimate(prop) == doctest::Approx(1.0 - covered).epsilon(1e-12));

  // point mass on a single cube
  WhitneyHistogram point(s.en, volK);
  const DyadicCube& q0 = s.en.complete.front();
  point.counts[q0] = 1000;
  point.total = 1000;
  CHECK(tv_estimate(point) ==
        doctest::Approx(1.0 - q0.volume() / volK).epsilon(1e-12));

  // empty histogram has no empirical law to compare
  WhitneyHistogram empty(s.en, volK);
  CHECK_THROWS_AS(tv_estimate(empty), std::invalid_argument);
}

TEST_CASE("tv of a large stationary sample is small") {
  Setup s = square_setup(5);
  WhitneyHistogram hist(s.en, 0.64);
  SplitMix64 rng(2024);

  // draw from the exact cube law, dropping the remainder mass
  std::vector<double> cdf;
  double acc = 0.0;
  for (const DyadicCube& q : s.en.complete) {
    acc += q.volume() / 0.64;
    cdf.push_back(acc);
  }
  // mass beyond the enumeration shows up as visits to deeper cubes
  DyadicCube deep(s.ctx.scale_exponent, 9, IntVector::Zero(2));
  const long n = 100000;
  for (long i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u >= acc) {
      hist.add(deep);
      continue;
    }
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    hist.add(s.en.complete[it - cdf.begin()]);
  }
  const double tv = tv_estimate(hist);
  CHECK(tv < 0.05);

  const double se = tv_bootstrap_stderr(hist, 200, rng);
  CHECK(se > 0.0);
  CHECK(se < 0.02);
}

TEST_CASE("warmth is the worst-bin density ratio") {
  Setup s = square_setup(5);
  WhitneyHistogram hist(s.en, 0.64);

  // concentrate the sample on the level-3 cubes, proportionally to volume:
  // every occupied ratio equals volK / vol(level-3 cubes) exactly
  double conc = 0.0;
  long bins = 0;
  for (const DyadicCube& q : s.en.complete) {
    if (q.level != 3) continue;
    const long c = std::lround(q.volume() * (1 << 6));
    hist.counts[q] = c;
    hist.total += c;
    conc += q.volume();
    ++bins;
  }
  REQUIRE(bins == 4);
  WarmthReport rep = warmth_report(hist);
  CHECK(rep.occupied_bins == bins);
  CHECK(rep.m_hat == doctest::Approx(0.64 / conc).epsilon(1e-12));

  WhitneyHistogram none(s.en, 0.64);
  CHECK_THROWS_AS(warmth_report(none), std::invalid_argument);
}

TEST_CASE("chi-square p-values are uniform under the null") {
  auto body = square(0.4);
  SplitMix64 rng(99);
  std::vector<double> pvals;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 2000; ++i) {
      Eigen::VectorXd x(2);
      x << (rng.uniform() - 0.5) * 0.8, (rng.uniform() - 0.5) * 0.8;
      pts.push_back(x);
    }
    ChiSquareReport rep = chi_square_uniformity(pts, *body, 4, rng);
    CHECK(rep.bins == 16);  // every grid bin lies inside the box
    CHECK(rep.dof == 15);
    pvals.push_back(rep.p_value);
  }
  CHECK(ks_uniform_pvalue(pvals) > 0.001);
}

TEST_CASE("chi-square rejects a grossly non-uniform sample") {
  auto body = square(0.4);
  SplitMix64 rng(7);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < 2000; ++i) {
    Eigen::VectorXd x(2);
    x << -rng.uniform() * 0.4, (rng.uniform() - 0.5) * 0.8;  // left half only
    pts.push_back(x);
  }
  ChiSquareReport rep = chi_square_uniformity(pts, *body, 4, rng);
  CHECK(rep.p_value < 1e-12);
}

TEST_CASE("upper regularized gamma matches the Poisson tail identity") {
  for (int k = 1; k <= 12; ++k)
    for (double x : {0.1, 0.5, 1.0, 3.0, 7.5, 20.0})
      CHECK(regularized_gamma_q(k, x) ==
            doctest::Approx(oracles::poisson_gamma_q(k, x)).epsilon(1e-12));

  CHECK(regularized_gamma_q(0.5, 0.5) ==
        doctest::Approx(0.31731050786291415).epsilon(1e-13));
  CHECK(regularized_gamma_q(1.0, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK(regularized_gamma_q(2.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("ks p-value separates uniform from concentrated samples") {
  SplitMix64 rng(5);
  std::vector<double> uni, conc;
  for (int i = 0; i < 2000; ++i) {
    uni.push_back(rng.uniform());
    conc.push_back(0.4 + 0.2 * rng.uniform());
  }
  const double pu = ks_uniform_pvalue(uni);
  const double pc = ks_uniform_pvalue(conc);
  CHECK(pu > 0.01);
  CHECK(pu <= 1.0);
  CHECK(pc < 1e-12);
}

TEST_CASE("cube chain mixing curve starts at the point-mass tv and decays") {
  Setup s = square_setup(4);
  const DyadicCube start = s.en.complete.front();
  SplitMix64 rng(31);
  std::vector<long> checkpoints = {0, 600, 1200};
  auto curve =
      mp_mixing_curve(s.ctx, s.en, 0.64, start, checkpoints, 1500, rng);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].step == 0);
  CHECK(curve[0].tv ==
        doctest::Approx(1.0 - start.volume() / 0.64).epsilon(1e-12));
  CHECK(curve[1].tv < curve[0].tv);
  CHECK(curve[2].tv < curve[1].tv + 2.0 * (curve[1].stderr_ + curve[2].stderr_));
  for (const MixPoint& m : curve) {
    CHECK(m.tv >= 0.0);
    CHECK(m.tv <= 1.0);
    CHECK(m.stderr_ >= 0.0);
  }
}

TEST_CASE("hit-and-run mixing curve decays from a cold start") {
  auto body = square(0.4);
  SplitMix64 rng(77);
  auto start = [](SplitMix64& r) {
    Eigen::VectorXd x(2);
    x << 0.39 - 0.005 * r.uniform(), 0.39 - 0.005 * r.uniform();
    return x;
  };
  std::vector<long> checkpoints = {0, 3000};
  auto curve = chr_mixing_curve(*body, start, checkpoints, 800, 4, rng);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].tv > 0.8);  // all mass in one corner bin
  CHECK(curve[1].tv < 0.1);
}

TEST_CASE("burn-in step counts match their formulas") {
  CHECK(mp_burn_in_steps(2, LpExponent::infinity(), 4, 50, 0.05) == 1769);
  CHECK(chr_burn_in_steps(2, 4, 50, 0.05) == 56589);
  CHECK(chr_point_burn_in_steps(2, 1.0, 0.4 * std::sqrt(2.0), 1e-6, 0.05) ==
        190342);

  // independent recomputation of the cube chain bound
  const double expect = std::pow(2.0, 4.0) * 16.0 * std::log(50.0 / 0.05);
  CHECK(mp_burn_in_steps(2, LpExponent::infinity(), 4, 50, 0.05) ==
        static_cast<long>(std::ceil(expect)));
  // p enters through the exponent 4 + 2/p
  CHECK(mp_burn_in_steps(2, LpExponent::one(), 4, 50, 0.05) ==
        static_cast<long>(std::ceil(std::pow(2.0, 6.0) * 16.0 *
                                    std::log(50.0 / 0.05))));
  // leading constant scales linearly
  CHECK(chr_burn_in_steps(2, 4, 50, 0.05, 2.0) >=
        2 * chr_burn_in_steps(2, 4, 50, 0.05) - 1);
}
