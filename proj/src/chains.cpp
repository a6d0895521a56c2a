#include "cubewalk/chains.hpp"

#include <cmath>

namespace cubewalk {

Eigen::VectorXd sample_point_in_cube(const DyadicCube& q, SplitMix64& rng) {
  const Eigen::VectorXd lo = q.lower();
  const double s = q.side();
  Eigen::VectorXd x(q.dim());
  for (int i = 0; i < q.dim(); ++i) {
    double u;
    do {
      u = rng.uniform();
    } while (u == 0.0);  // keep the point in the open interior
    x[i] = lo[i] + s * u;
  }
  return x;
}

FacetPoint sample_boundary_point(const DyadicCube& q, SplitMix64& rng) {
  const int n = q.dim();
  const int f = rng.below(2 * n);
  FacetPoint out;
  out.axis = f / 2;
  out.sign = (f % 2 == 0) ? -1 : +1;
  out.x = sample_point_in_cube(q, rng);
  const double s = q.side();
  out.x[out.axis] =
      s * static_cast<double>(q.vertex[out.axis] + (out.sign > 0 ? 1 : 0));
  return out;
}

DyadicCube mp_step(const WhitneyContext& ctx, const DyadicCube& q,
                   SplitMix64& rng) {
  if (rng.uniform() < 0.5) return q;
  for (int attempt = 0; attempt < 16; ++attempt) {
    FacetPoint bp = sample_boundary_point(q, rng);
    Eigen::VectorXd xp = std::move(bp.x);
    xp[bp.axis] += bp.sign * 0.25 * q.side();
    DyadicCube next;
    try {
      next = locate_cube(ctx, xp);
    } catch (const BoundaryPointError&) {
      continue;
    } catch (const MarginError&) {
      continue;
    }
    if (next.level <= q.level) return next;  // side' >= side: accept
    const double ratio = std::ldexp(1.0, q.level - next.level);  // side'/side
    return rng.uniform() < ratio ? next : q;
  }
  throw StepFailureError("proposal location failed 16 times in a row");
}

double mp_transition_probability(const DyadicCube& from, const DyadicCube& to) {
  if (from == to) throw std::invalid_argument("defined for distinct cubes");
  const double area = shared_facet_area(from, to);
  if (area == 0.0) return 0.0;
  const int n = from.dim();
  const double s = from.side();
  const double surface = 2.0 * n * std::pow(s, n - 1);
  return 0.5 * (area / surface) * std::min(1.0, to.side() / s);
}

Eigen::VectorXd chr_step(const ConvexBody& body, const Eigen::VectorXd& x,
                         SplitMix64& rng) {
  if (rng.uniform() < 0.5) return x;
  const int j = rng.below(body.dim());
  const double tol = std::ldexp(body.outer_radius_inf(), -40);
  std::pair<double, double> chord;
  try {
    chord = body.chord(x, j, tol);
  } catch (const std::domain_error&) {
    throw StepFailureError("walk point lost the interior of the body");
  }
  const double lo = chord.first + tol;
  const double hi = chord.second - tol;
  if (!(hi > lo))
    throw StepFailureError("chord too short for the chord tolerance");
  Eigen::VectorXd out = x;
  out[j] = x[j] + rng.uniform(lo, hi);
  if (!body.contains(out))
    throw StepFailureError("chord endpoint rounding left the body");
  return out;
}

std::vector<Eigen::VectorXd> cube_trajectory_to_points(
    const std::vector<DyadicCube>& cubes, SplitMix64& rng) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(cubes.size());
  for (const auto& q : cubes) pts.push_back(sample_point_in_cube(q, rng));
  return pts;
}

}  // namespace cubewalk
