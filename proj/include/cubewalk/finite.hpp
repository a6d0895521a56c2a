#pragma once

#include <vector>

#include "cubewalk/chains.hpp"
#include "cubewalk/whitney.hpp"

namespace cubewalk {

// Explicit finite restriction of the cube chain: all decomposition cubes
// with level <= depth as individual states, everything deeper fused into a
// single absorbing-boundary state at index fused_index(). Reversible by
// construction, so pi is exactly stationary up to rounding.
struct FiniteChain {
  std::vector<DyadicCube> cubes;  // unfused states, indices 0..m-1
  bool has_fused = false;
  Eigen::VectorXd pi;  // stationary vector over all states
  Eigen::MatrixXd P;   // row-stochastic transition matrix

  int num_states() const { return static_cast<int>(pi.size()); }
  int fused_index() const {
    return has_fused ? static_cast<int>(cubes.size()) : -1;
  }
};

// Builds the fused finite chain at the given depth. volK must be the exact
// volume of the body; pi(Q) = vol(Q)/volK, and the fused state receives
// the complementary mass. Unfused transition entries are the analytic cube
// chain probabilities; the flow into the fused state is the leftover facet
// area (which abuts only half-side fused cubes, hence acceptance 1/2), and
// the flow out of it follows from detailed balance.
// Throws InconsistentVolumeError when volK does not exceed the enumerated
// volume.
FiniteChain build_aux_chain(const WhitneyContext& ctx, int depth, double volK);

struct CutReport {
  std::vector<int> subset;  // state indices in S
  double psi = 0.0;         // ergodic flow out of S
  double pi_s = 0.0;        // stationary mass of S
  double phi = 0.0;         // psi / pi_s
};

// Exact flow/mass/conductance of the cut S vs its complement.
CutReport cut_conductance(const FiniteChain& chain, const std::vector<int>& s);

// min over nonempty S with pi(S) <= alpha of phi(S), by exhaustive subset
// enumeration (Gray-code incremental flow updates). Coarse chains only.
double conductance_profile_bruteforce(const FiniteChain& chain, double alpha);

// Halving cut of the unit cube [-1/2, 1/2]^n by the hyperplane x_1 = 0,
// which never crosses a decomposition cube interior. S takes every cube
// with center_1 < 0 plus half of the fused mass (exact by mirror
// symmetry). Cross-hyperplane flow happens only between mirror-image
// complete cubes of equal side sharing a full facet, each contributing
// pi(Q)/(4n); flow between fused mirror cubes below the cutoff is not
// represented and is bounded by the reported frontier volume.
struct HalfCubeReport {
  int n = 0;
  int depth = 0;
  double pi_s = 0.5;                  // exact
  double psi = 0.0;                   // hyperplane_mass / (4n)
  double phi = 0.0;                   // psi / pi_s
  double hyperplane_mass = 0.0;       // pi of left cubes with a facet on x_1=0
  long hyperplane_cubes = 0;
  double frontier_touch_volume = 0.0;  // unresolved volume touching the plane
};

HalfCubeReport half_cube_experiment(int n, LpExponent p, int depth);

}  // namespace cubewalk
