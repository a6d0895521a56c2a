#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cubewalk/rng.hpp"
#include "cubewalk/whitney.hpp"
#include "oracles.hpp"

using namespace cubewalk;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

std::shared_ptr<AxisBox> square04() {
  return std::make_shared<AxisBox>(vec2(-0.4, -0.4), vec2(0.4, 0.4));
}

DyadicCube cube2(int a, int k, std::int64_t v0, std::int64_t v1) {
  IntVector v(2);
  v << v0, v1;
  return DyadicCube(a, k, v);
}

Eigen::VectorXd random_in(const DyadicCube& q, SplitMix64& rng) {
  Eigen::VectorXd x = q.lower();
  for (int i = 0; i < q.dim(); ++i) x[i] += q.side() * rng.uniform();
  return x;
}

std::multiset<std::vector<std::int64_t>> keyset(
    const std::vector<DyadicCube>& cubes) {
  std::multiset<std::vector<std::int64_t>> keys;
  for (const auto& q : cubes) {
    std::vector<std::int64_t> k{q.level};
    for (int i = 0; i < q.dim(); ++i) k.push_back(q.vertex[i]);
    keys.insert(k);
  }
  return keys;
}

}  // namespace

TEST_CASE("dyadic cube arithmetic") {
  DyadicCube q = cube2(0, 3, 0, 0);
  CHECK(q.side() == 0.125);
  CHECK(q.volume() == doctest::Approx(0.015625));
  CHECK(q.diameter(LpExponent::one()) == 0.25);
  CHECK(q.center() == vec2(0.0625, 0.0625));
  CHECK(q.parent() == cube2(0, 2, 0, 0));
  CHECK(cube2(0, 3, -1, -2).parent() == cube2(0, 2, -1, -1));
  CHECK(q.child(3) == cube2(0, 4, 1, 1));

  // full shared facet between equal siblings
  CHECK(shared_facet_area(cube2(0, 3, 0, 0), cube2(0, 3, 1, 0)) ==
        doctest::Approx(0.125));
  // half-size neighbor shares a quarter... of the larger side
  CHECK(shared_facet_area(cube2(0, 3, 0, 0), cube2(0, 4, 2, 1)) ==
        doctest::Approx(0.0625));
  // corner touch only
  CHECK(shared_facet_area(cube2(0, 3, 0, 0), cube2(0, 3, 1, 1)) == 0.0);
  CHECK(shared_facet_area(cube2(0, 3, 0, 0), cube2(0, 3, 2, 0)) == 0.0);
  CHECK(abutting(cube2(0, 3, 0, 0), cube2(0, 3, 0, 1)));
}

TEST_CASE("scale exponent choice") {
  CHECK(WhitneyContext::make(square04(), LpExponent::infinity())
            .scale_exponent == 0);
  auto big = std::make_shared<AxisBox>(Eigen::VectorXd::Constant(2, -3.0),
                                       Eigen::VectorXd::Constant(2, 3.0));
  CHECK(WhitneyContext::make(big, LpExponent::infinity()).scale_exponent == 2);
  auto unit = std::make_shared<AxisBox>(Eigen::VectorXd::Constant(2, -1.0),
                                        Eigen::VectorXd::Constant(2, 1.0));
  CHECK(WhitneyContext::make(unit, LpExponent::infinity()).scale_exponent == 1);
}

TEST_CASE("subdivision predicate on the radius-0.4 square") {
  WhitneyContext ctx = WhitneyContext::make(square04(), LpExponent::infinity());
  CHECK(is_subdivided(ctx, cube2(0, 0, 0, 0)));   // center dist 0.1
  CHECK(is_subdivided(ctx, cube2(0, 2, 0, 0)));   // 0.5*0.275 < 0.25
  CHECK_FALSE(is_subdivided(ctx, cube2(0, 3, 0, 0)));  // 0.5*0.3375 >= 0.125
}

TEST_CASE("root mesh admission") {
  WhitneyContext ctx = WhitneyContext::make(square04(), LpExponent::infinity());
  CHECK(in_root_mesh(ctx, cube2(0, 0, 0, 0)));    // dist 0.1 <= 0.5
  CHECK_FALSE(in_root_mesh(ctx, cube2(0, 0, 2, 0)));  // dist 2.1 > 0.5
  CHECK(in_root_mesh(ctx, cube2(0, 0, -1, -1)));  // center inside K
  CHECK_THROWS_AS(in_root_mesh(ctx, cube2(0, 1, 0, 0)), std::invalid_argument);
}

TEST_CASE("decomposition membership") {
  WhitneyContext ctx = WhitneyContext::make(square04(), LpExponent::infinity());
  CHECK(in_decomposition(ctx, cube2(0, 3, 0, 0)));
  CHECK_FALSE(in_decomposition(ctx, cube2(0, 2, 0, 0)));  // subdivided
  // not subdivided but center (0.4375, 0.0625) outside K
  CHECK_FALSE(in_decomposition(ctx, cube2(0, 3, 3, 0)));
}

TEST_CASE("enumeration equals the literal recursive construction") {
  auto body = square04();
  for (LpExponent p :
       {LpExponent::one(), LpExponent::two(), LpExponent::infinity()}) {
    WhitneyContext ctx = WhitneyContext::make(body, p);
    Enumeration en = enumerate_cubes(ctx, 5);
    auto oracle = oracles::whitney_reference(
        2, ctx.scale_exponent, p, 5,
        oracles::box_distance(body->lower(), body->upper(), p),
        oracles::box_member(body->lower(), body->upper()), 0.4);
    CHECK(keyset(en.complete) == keyset(oracle.complete));
    CHECK(keyset(en.frontier) == keyset(oracle.frontier));
    CHECK(en.complete.size() > 0);
  }
}

TEST_CASE("enumeration structure on the square") {
  WhitneyContext ctx = WhitneyContext::make(square04(), LpExponent::infinity());
  Enumeration en = enumerate_cubes(ctx, 4);
  // the four innermost level-3 cubes are the only complete level-3 cubes:
  // their centers are the only ones with |c|_inf small enough
  long level3 = 0;
  bool found = false;
  for (const auto& q : en.complete) {
    if (q.level == 3) ++level3;
    if (q == cube2(0, 3, 0, 0)) found = true;
  }
  CHECK(found);
  CHECK(level3 == 4);

  Enumeration shallow = enumerate_cubes(ctx, 1);
  CHECK(shallow.complete.empty());
  CHECK_FALSE(shallow.frontier.empty());

  // telescoping volume at depth 10
  Enumeration deep = enumerate_cubes(ctx, 10);
  CHECK(deep.complete_volume() <= 0.64);
  CHECK(deep.complete_volume() >= 0.64 * (1 - 1e-2));
  CHECK(deep.complete_volume() + deep.frontier_volume() >=
        doctest::Approx(0.64).epsilon(1e-9));

  // pairwise disjoint interiors: no enumerated cube contains another's
  // center, and keys are unique
  auto keys = keyset(en.complete);
  CHECK(keys.size() == en.complete.size());
  for (const auto& a : en.complete)
    for (const auto& b : en.complete)
      if (!(a == b)) CHECK_FALSE(a.contains_interior(b.center()));
}

TEST_CASE("point location on the square") {
  WhitneyContext ctx = WhitneyContext::make(square04(), LpExponent::infinity());
  CHECK(locate_cube(ctx, vec2(0.01, 0.01)) == cube2(0, 3, 0, 0));
  CHECK(locate_cube(ctx, vec2(0.01, -0.01)) == cube2(0, 3, 0, -1));
  // dyadic coordinate at the candidate level
  CHECK_THROWS_AS(locate_cube(ctx, vec2(0.125, 0.01)), BoundaryPointError);

  Enumeration en = enumerate_cubes(ctx, 8);
  SplitMix64 rng(5);
  int tested = 0;
  for (int t = 0; t < 4000 && tested < 1000; ++t) {
    Eigen::VectorXd x = vec2(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));
    // keep the containing cube within the enumerated depth
    if (ctx.body->distance_to_boundary(x, ctx.p) <
        5.0 * ctx.p.unit_diameter(2) * std::ldexp(1.0, -8))
      continue;
    ++tested;
    const DyadicCube q = locate_cube(ctx, x);
    CHECK(q.contains_interior(x));
    CHECK(in_decomposition(ctx, q));
    int containing = 0;
    for (const auto& c : en.complete)
      if (c.contains_interior(x)) {
        ++containing;
        CHECK(c == q);
      }
    CHECK(containing == 1);
  }
  CHECK(tested == 1000);
}

TEST_CASE("candidate level window is valid and narrow") {
  auto body = square04();
  for (LpExponent p : {LpExponent::one(), LpExponent::infinity()}) {
    WhitneyContext ctx = WhitneyContext::make(body, p);
    SplitMix64 rng(17);
    for (int t = 0; t < 500; ++t) {
      Eigen::VectorXd x = vec2(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));
      const double d = ctx.body->distance_to_boundary(x, p);
      if (d < 1e-4) continue;
      const double u = std::log2(3.0 * p.unit_diameter(2) / (2.0 * d));
      const double bmin = std::ceil(u - 0.01);
      const double bmax = std::floor(u + std::log2(10.0 / 3.0) + 0.01);
      CHECK(bmax - bmin <= 1);
      const DyadicCube q = locate_cube(ctx, x);
      CHECK(q.level >= std::max(0.0, bmin));
      CHECK(q.level <= std::max(0.0, bmax));
    }
  }
}

TEST_CASE("theorem sandwich bounds hold on enumerated cubes") {
  auto body = square04();
  SplitMix64 rng(23);
  for (LpExponent p :
       {LpExponent::one(), LpExponent::two(), LpExponent::infinity()}) {
    WhitneyContext ctx = WhitneyContext::make(body, p);
    Enumeration en = enumerate_cubes(ctx, 5);
    for (const auto& q : en.complete) {
      const double diam = q.diameter(p);
      const double d = body->distance_to_boundary(q.center(), p);
      CHECK(d >= 2.0 * diam);
      CHECK(d <= 4.5 * diam);
      Eigen::VectorXd y = random_in(q, rng);
      const double dy = boundary_distance(*body, y, p);
      CHECK(dy >= 1.5 * diam);
      CHECK(dy <= 5.0 * diam);
    }
    // abutting side ratios
    for (const auto& a : en.complete)
      for (const auto& b : en.complete) {
        if (a == b || !abutting(a, b)) continue;
        const int dk = std::abs(a.level - b.level);
        CHECK(dk <= 1);
      }
  }
}
