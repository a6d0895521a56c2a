#include "cubewalk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cubewalk {

WhitneyHistogram::WhitneyHistogram(const Enumeration& en, double volK) {
  for (const auto& q : en.complete) {
    const double mass = q.volume() / volK;
    pi.emplace(q, mass);
    covered_pi += mass;
  }
}

namespace {

// Category view of a histogram: observed bins with their reference mass
// (-1 marks bins outside the enumeration), plus the constant unobserved
// reference mass. Lets the bootstrap recompute TV from counts alone.
struct TvCategories {
  std::vector<double> ref;     // reference mass per observed bin, -1 outside
  std::vector<long> counts;
  double unobserved_pi = 0.0;  // enumerated mass never visited
  double remainder_pi = 0.0;   // 1 - covered
  long total = 0;

  double tv(const std::vector<long>& c) const {
    double acc = unobserved_pi;
    double extra = 0.0;
    const double n = static_cast<double>(total);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (ref[i] >= 0.0)
        acc += std::abs(c[i] / n - ref[i]);
      else
        extra += c[i] / n;
    }
    acc += std::abs(extra - remainder_pi);
    return 0.5 * acc;
  }
};

TvCategories categorize(const WhitneyHistogram& hist) {
  if (hist.total <= 0) throw std::invalid_argument("empty histogram");
  TvCategories cat;
  cat.total = hist.total;
  cat.remainder_pi = 1.0 - hist.covered_pi;
  double observed_pi = 0.0;
  for (const auto& [q, c] : hist.counts) {
    auto it = hist.pi.find(q);
    const double ref = it == hist.pi.end() ? -1.0 : it->second;
    if (ref >= 0.0) observed_pi += ref;
    cat.ref.push_back(ref);
    cat.counts.push_back(c);
  }
  cat.unobserved_pi = std::max(0.0, hist.covered_pi - observed_pi);
  return cat;
}

}  // namespace

double tv_estimate(const WhitneyHistogram& hist) {
  const TvCategories cat = categorize(hist);
  return cat.tv(cat.counts);
}

double tv_bootstrap_stderr(const WhitneyHistogram& hist, int resamples,
                           SplitMix64& rng) {
  const TvCategories cat = categorize(hist);
  std::vector<double> cum(cat.counts.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cat.counts.size(); ++i) {
    acc += cat.counts[i];
    cum[i] = acc;
  }
  std::vector<long> re(cat.counts.size());
  double mean = 0.0, sq = 0.0;
  for (int b = 0; b < resamples; ++b) {
    std::fill(re.begin(), re.end(), 0L);
    for (long i = 0; i < cat.total; ++i) {
      const double u = rng.uniform() * acc;
      const auto it = std::upper_bound(cum.begin(), cum.end(), u);
      ++re[std::min<std::size_t>(it - cum.begin(), re.size() - 1)];
    }
    const double t = cat.tv(re);
    mean += t;
    sq += t * t;
  }
  mean /= resamples;
  return std::sqrt(std::max(0.0, sq / resamples - mean * mean));
}

WarmthReport warmth_report(const WhitneyHistogram& hist) {
  if (hist.total <= 0) throw std::invalid_argument("empty histogram");
  WarmthReport rep;
  for (const auto& [q, c] : hist.counts) {
    auto it = hist.pi.find(q);
    if (it == hist.pi.end() || it->second <= 0.0) continue;
    ++rep.occupied_bins;
    rep.m_hat = std::max(
        rep.m_hat, (static_cast<double>(c) / hist.total) / it->second);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Grid binning over [-R, R]^n with clipped bin volumes
// ---------------------------------------------------------------------------

namespace {

struct GridBins {
  int per_axis = 0;
  int n = 0;
  double radius = 0.0;
  double width = 0.0;
  std::vector<double> frac;  // normalized volume fractions

  int index(const Eigen::VectorXd& x) const {
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      int c = static_cast<int>(std::floor((x[i] + radius) / width));
      c = std::clamp(c, 0, per_axis - 1);
      idx = idx * per_axis + c;
    }
    return idx;
  }
};

GridBins make_grid(const ConvexBody& body, int per_axis, SplitMix64& rng) {
  GridBins g;
  g.per_axis = per_axis;
  g.n = body.dim();
  g.radius = body.outer_radius_inf();
  g.width = 2.0 * g.radius / per_axis;
  const int cells = static_cast<int>(std::pow(per_axis, g.n));
  g.frac.assign(cells, 0.0);
  Eigen::VectorXd corner(g.n), probe(g.n);
  double total = 0.0;
  for (int idx = 0; idx < cells; ++idx) {
    int rem = idx;
    Eigen::VectorXi coord(g.n);
    for (int i = g.n - 1; i >= 0; --i) {
      coord[i] = rem % per_axis;
      rem /= per_axis;
    }
    bool full = true;
    for (unsigned m = 0; m < (1U << g.n) && full; ++m) {
      for (int i = 0; i < g.n; ++i)
        corner[i] = -g.radius + g.width * (coord[i] + ((m >> i) & 1U));
      full = body.contains(corner);
    }
    double vol;
    if (full) {
      vol = std::pow(g.width, g.n);  // cell is inside K by convexity
    } else {
      const int probes = 100000;
      int hits = 0;
      for (int t = 0; t < probes; ++t) {
        for (int i = 0; i < g.n; ++i)
          probe[i] = -g.radius + g.width * (coord[i] + rng.uniform());
        if (body.contains(probe)) ++hits;
      }
      vol = std::pow(g.width, g.n) * hits / probes;
    }
    g.frac[idx] = vol;
    total += vol;
  }
  for (double& f : g.frac) f /= total;
  return g;
}

}  // namespace

ChiSquareReport chi_square_uniformity(const std::vector<Eigen::VectorXd>& pts,
                                      const ConvexBody& body, int grid,
                                      SplitMix64& rng) {
  if (grid < 2) throw std::invalid_argument("need at least 2 bins per axis");
  if (pts.empty()) throw std::invalid_argument("no points supplied");
  const GridBins bins = make_grid(body, grid, rng);
  std::vector<long> counts(bins.frac.size(), 0);
  for (const auto& x : pts) ++counts[bins.index(x)];
  const double n = static_cast<double>(pts.size());

  double stat = 0.0;
  int kept = 0;
  double pooled_e = 0.0;
  long pooled_c = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * bins.frac[i];
    if (e < 5.0) {
      pooled_e += e;
      pooled_c += counts[i];
      continue;
    }
    stat += (counts[i] - e) * (counts[i] - e) / e;
    ++kept;
  }
  if (pooled_e >= 5.0 || pooled_c > 0) {
    if (pooled_e <= 0.0) {
      // observed mass where the reference has none
      return {std::numeric_limits<double>::infinity(), 0.0, kept, kept + 1};
    }
    stat += (pooled_c - pooled_e) * (pooled_c - pooled_e) / pooled_e;
    ++kept;
  }
  if (kept < 2)
    throw std::invalid_argument("too few populated bins for a chi-square test");
  ChiSquareReport rep;
  rep.statistic = stat;
  rep.bins = kept;
  rep.dof = kept - 1;
  rep.p_value = regularized_gamma_q(0.5 * rep.dof, 0.5 * stat);
  return rep;
}

std::vector<MixPoint> mp_mixing_curve(const WhitneyContext& ctx,
                                      const Enumeration& en, double volK,
                                      const DyadicCube& start,
                                      const std::vector<long>& checkpoints,
                                      int replicas, SplitMix64& rng) {
  std::vector<WhitneyHistogram> hists(checkpoints.size(),
                                      WhitneyHistogram(en, volK));
  for (int r = 0; r < replicas; ++r) {
    SplitMix64 walker = rng.split();
    DyadicCube cur = start;
    long step = 0;
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
      while (step < checkpoints[k]) {
        cur = mp_step(ctx, cur, walker);
        ++step;
      }
      hists[k].add(cur);
    }
  }
  std::vector<MixPoint> curve;
  for (std::size_t k = 0; k < checkpoints.size(); ++k)
    curve.push_back({checkpoints[k], tv_estimate(hists[k]),
                     tv_bootstrap_stderr(hists[k], 50, rng)});
  return curve;
}

std::vector<MixPoint> chr_mixing_curve(
    const ConvexBody& body,
    const std::function<Eigen::VectorXd(SplitMix64&)>& start_sampler,
    const std::vector<long>& checkpoints, int replicas, int grid,
    SplitMix64& rng) {
  const GridBins bins = make_grid(body, grid, rng);
  std::vector<std::vector<long>> counts(
      checkpoints.size(), std::vector<long>(bins.frac.size(), 0));
  for (int r = 0; r < replicas; ++r) {
    SplitMix64 walker = rng.split();
    Eigen::VectorXd cur = start_sampler(walker);
    long step = 0;
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
      while (step < checkpoints[k]) {
        cur = chr_step(body, cur, walker);
        ++step;
      }
      ++counts[k][bins.index(cur)];
    }
  }
  std::vector<MixPoint> curve;
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    double tv = 0.0;
    for (std::size_t i = 0; i < bins.frac.size(); ++i)
      tv += std::abs(counts[k][i] / static_cast<double>(replicas) -
                     bins.frac[i]);
    tv *= 0.5;
    // multinomial bootstrap over grid bins
    std::vector<double> cum(bins.frac.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
      acc += counts[k][i];
      cum[i] = acc;
    }
    double mean = 0.0, sq = 0.0;
    const int boots = 50;
    std::vector<long> re(cum.size());
    for (int b = 0; b < boots; ++b) {
      std::fill(re.begin(), re.end(), 0L);
      for (int i = 0; i < replicas; ++i) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        ++re[std::min<std::size_t>(it - cum.begin(), re.size() - 1)];
      }
      double t = 0.0;
      for (std::size_t i = 0; i < re.size(); ++i)
        t += std::abs(re[i] / static_cast<double>(replicas) - bins.frac[i]);
      t *= 0.5;
      mean += t;
      sq += t * t;
    }
    mean /= boots;
    curve.push_back(
        {checkpoints[k], tv, std::sqrt(std::max(0.0, sq / boots - mean * mean))});
  }
  return curve;
}

long mp_burn_in_steps(int n, LpExponent p, double r_over, double warmth,
                      double eps, double c) {
  const double exp_n = 4.0 + (p.is_inf() ? 0.0 : 2.0 / p.value());
  return static_cast<long>(std::ceil(c * std::pow(n, exp_n) * r_over * r_over *
                                     std::log(warmth / eps)));
}

long chr_burn_in_steps(int n, double r_over, double warmth, double eps,
                       double c) {
  return static_cast<long>(std::ceil(c * std::pow(n, 9) * r_over * r_over *
                                     std::log(warmth / eps)));
}

long chr_point_burn_in_steps(int n, double r_over, double big_r, double delta,
                             double eps, double c) {
  const double tau = std::ceil(2.0 * n * std::log(6.0 * n / eps));
  const double inner =
      std::log(big_r / (2.0 * delta)) + tau * std::log(6.0 * tau / eps);
  return static_cast<long>(
      std::ceil(c * std::pow(n, 10) * r_over * r_over * inner));
}

// ---------------------------------------------------------------------------
// Tail probabilities
// ---------------------------------------------------------------------------

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series for P(a, x)
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

double ks_uniform_pvalue(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("no values");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    d = std::max(d, (i + 1) / n - values[i]);
    d = std::max(d, values[i] - i / n);
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    p += sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace cubewalk
