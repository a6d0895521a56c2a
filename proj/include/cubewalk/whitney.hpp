#pragma once

#include <memory>
#include <vector>

#include "cubewalk/body.hpp"
#include "cubewalk/dyadic.hpp"

namespace cubewalk {

// Multiscale cube decomposition of K°: level-k cubes of side 2^(a-k) are
// subdivided while lambda * dist_p(center, boundary) < diam_p(cube), and a
// cube belongs to the decomposition F when it is not subdivided, its center
// lies in K°, and its whole ancestor chain is subdivided down from an
// admitted root.
struct WhitneyContext {
  std::shared_ptr<const ConvexBody> body;
  LpExponent p = LpExponent::infinity();
  int scale_exponent = 0;  // a: smallest integer >= 0 with 2^a > R_inf
  double lambda = 0.5;     // fixed

  // Chooses the scale exponent from the body's enclosing radius.
  static WhitneyContext make(std::shared_ptr<const ConvexBody> body,
                             LpExponent p);
};

// lambda * dist_p(center, boundary) < diam_p(Q); centers outside K use the
// distance to K itself (the nearest boundary point).
bool is_subdivided(const WhitneyContext& ctx, const DyadicCube& q);

// Level-0 root admission: dist_p(center, K) <= diam_p(Q) / 2.
bool in_root_mesh(const WhitneyContext& ctx, const DyadicCube& q);

// Full membership test for F: ancestors subdivided from an admitted root,
// q itself not subdivided, center in K.
bool in_decomposition(const WhitneyContext& ctx, const DyadicCube& q);

// The unique cube of F whose interior contains x. Candidate levels come
// from the boundary distance: with scaled distance d = dist/2^a and
// u = log2(3 n^(1/p) / (2d)), the true level lies in
// [ceil(u - 0.01), floor(u + log2(10/3) + 0.01)], tried in decreasing
// order; a candidate is accepted when it is not subdivided and its parent
// is (root admission at level 0).
// Throws BoundaryPointError when x hits a cube face exactly at a candidate
// level, MarginError when x is too close to the boundary to resolve.
DyadicCube locate_cube(const WhitneyContext& ctx, const Eigen::VectorXd& x);

struct Enumeration {
  std::vector<DyadicCube> complete;  // members of F with level <= cutoff
  std::vector<DyadicCube> frontier;  // subdivided cubes at the cutoff level

  double complete_volume() const;
  double frontier_volume() const;
};

// Breadth-first realization of the recursive construction down to
// max_level. Subdivided cubes are always descended (their centers may lie
// outside K even when deeper descendants belong to F); non-subdivided
// cubes with centers outside K are dropped.
Enumeration enumerate_cubes(const WhitneyContext& ctx, int max_level);

}  // namespace cubewalk
