#pragma once

#include <cstdint>
#include <vector>

#include "cubewalk/rng.hpp"
#include "cubewalk/whitney.hpp"

namespace cubewalk {

template <typename State>
struct Trajectory {
  std::vector<State> states;  // start plus every stride-th state
  std::uint64_t seed = 0;
  long steps = 0;
  long stride = 1;
};

// Uniform on the open cube interior, coordinates independent.
Eigen::VectorXd sample_point_in_cube(const DyadicCube& q, SplitMix64& rng);

struct FacetPoint {
  Eigen::VectorXd x;
  int axis = 0;
  int sign = +1;  // outward normal is sign * e_axis
};

// Uniform on the cube boundary: facet uniform among the 2n equal-area
// facets, then uniform on that facet.
FacetPoint sample_boundary_point(const DyadicCube& q, SplitMix64& rng);

// One step of the lazy multiscale Metropolis chain on F: hold with
// probability 1/2, else propose the cube containing x' = x + (s/4) * normal
// for a uniform boundary point x and accept with probability
// min(1, side'/side). Locate failures retry with fresh boundary draws, at
// most 16 times, then raise StepFailureError.
DyadicCube mp_step(const WhitneyContext& ctx, const DyadicCube& q,
                   SplitMix64& rng);

// Analytic one-step probability between distinct cubes of F:
//   P(Q, Q') = (1/2) * sharedFacetArea / (2n s^(n-1)) * min(1, s'/s),
// zero for non-abutting pairs. The shared area is exact dyadic arithmetic.
double mp_transition_probability(const DyadicCube& from, const DyadicCube& to);

// One step of lazy coordinate hit-and-run: hold with probability 1/2, else
// resample a uniform coordinate of x uniformly on its axis chord, shrunk by
// tol = 2^-40 * R_inf at each end.
Eigen::VectorXd chr_step(const ConvexBody& body, const Eigen::VectorXd& x,
                         SplitMix64& rng);

template <typename State, typename Kernel>
Trajectory<State> run_walk(Kernel&& kernel, State start, long steps,
                           long stride, SplitMix64& rng,
                           std::uint64_t seed = 0) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  Trajectory<State> traj;
  traj.seed = seed;
  traj.steps = steps;
  traj.stride = stride;
  traj.states.reserve(static_cast<std::size_t>(steps / stride) + 1);
  traj.states.push_back(start);
  State cur = std::move(start);
  for (long i = 1; i <= steps; ++i) {
    cur = kernel(cur, rng);
    if (i % stride == 0) traj.states.push_back(cur);
  }
  return traj;
}

// One uniform point per recorded cube; pushes the cube law forward to the
// point law it induces on K.
std::vector<Eigen::VectorXd> cube_trajectory_to_points(
    const std::vector<DyadicCube>& cubes, SplitMix64& rng);

}  // namespace cubewalk
