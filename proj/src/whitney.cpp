#include "cubewalk/whitney.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace cubewalk {

WhitneyContext WhitneyContext::make(std::shared_ptr<const ConvexBody> body,
                                    LpExponent p) {
  WhitneyContext ctx;
  ctx.p = p;
  const double r = body->outer_radius_inf();
  int a = 0;
  while (std::ldexp(1.0, a) <= r) ++a;  // a stays 0 when R_inf < 1
  ctx.scale_exponent = a;
  ctx.body = std::move(body);
  return ctx;
}

bool is_subdivided(const WhitneyContext& ctx, const DyadicCube& q) {
  const double gamma = 2.0 * q.diameter(ctx.p);  // dist < gamma <=> subdivide
  const Eigen::VectorXd c = q.center();
  if (ctx.body->has_exact_distance(ctx.p))
    return boundary_distance(*ctx.body, c, ctx.p) < gamma;
  // Membership-only oracle. Outside centers cannot be measured, so treat
  // them as subdivided; the extra descents never admit cubes into F.
  if (!ctx.body->contains(c)) return true;
  return !ctx.body->distance_exceeds(c, gamma, ctx.p);
}

bool in_root_mesh(const WhitneyContext& ctx, const DyadicCube& q) {
  if (q.level != 0) throw std::invalid_argument("root cubes have level 0");
  const double gamma = 0.5 * q.diameter(ctx.p);
  const Eigen::VectorXd c = q.center();
  if (ctx.body->contains(c)) return true;
  try {
    return ctx.body->distance_to_set(c, ctx.p) <= gamma;
  } catch (const UnsupportedCapabilityError&) {
    // Conservative axis probes; may admit extra far-out roots whose
    // subtrees contribute nothing to F.
    Eigen::VectorXd y = c;
    for (int j = 0; j < q.dim(); ++j) {
      for (double s : {-1.0, 1.0}) {
        y[j] = c[j] + s * gamma;
        if (ctx.body->contains(y)) return true;
      }
      y[j] = c[j];
    }
    return false;
  }
}

bool in_decomposition(const WhitneyContext& ctx, const DyadicCube& q) {
  if (is_subdivided(ctx, q)) return false;
  if (!ctx.body->contains(q.center())) return false;
  DyadicCube anc = q;
  while (anc.level > 0) {
    anc = anc.parent();
    if (!is_subdivided(ctx, anc)) return false;
  }
  return in_root_mesh(ctx, anc);
}

DyadicCube locate_cube(const WhitneyContext& ctx, const Eigen::VectorXd& x) {
  const int n = ctx.body->dim();
  const int a = ctx.scale_exponent;
  const double d = ctx.body->distance_to_boundary(x, ctx.p);
  const double ds = std::ldexp(d, -a);
  const double u = std::log2(3.0 * ctx.p.unit_diameter(n) / (2.0 * ds));
  int b_max = std::max(0, static_cast<int>(
                              std::floor(u + std::log2(10.0 / 3.0) + 0.01)));
  int b_min = std::max(0, static_cast<int>(std::ceil(u - 0.01)));
  b_min = std::min(b_min, b_max);
  for (int b = b_max; b >= b_min; --b) {
    IntVector v(n);
    bool on_face = false;
    for (int i = 0; i < n; ++i) {
      const double z = std::ldexp(x[i], b - a);
      const double f = std::floor(z);
      if (z == f) {
        on_face = true;
        break;
      }
      v[i] = static_cast<std::int64_t>(f);
    }
    if (on_face)
      throw BoundaryPointError("point lies on a cube face at a candidate level");
    DyadicCube q(a, b, std::move(v));
    if (is_subdivided(ctx, q)) continue;
    const bool admitted =
        b == 0 ? in_root_mesh(ctx, q) : is_subdivided(ctx, q.parent());
    if (admitted) return q;
  }
  throw std::logic_error("locate_cube: no candidate level admitted the point");
}

double Enumeration::complete_volume() const {
  double v = 0.0;
  for (const auto& q : complete) v += q.volume();
  return v;
}

double Enumeration::frontier_volume() const {
  double v = 0.0;
  for (const auto& q : frontier) v += q.volume();
  return v;
}

Enumeration enumerate_cubes(const WhitneyContext& ctx, int max_level) {
  if (max_level < 1) throw std::invalid_argument("depth cutoff must be >= 1");
  const int n = ctx.body->dim();
  const int a = ctx.scale_exponent;
  const double s0 = std::ldexp(1.0, a);
  Enumeration out;

  std::function<void(const DyadicCube&)> visit = [&](const DyadicCube& q) {
    if (!is_subdivided(ctx, q)) {
      if (ctx.body->contains(q.center())) out.complete.push_back(q);
      return;  // not in F and children are not candidates either
    }
    if (q.level == max_level) {
      out.frontier.push_back(q);
      return;
    }
    for (unsigned m = 0; m < q.num_children(); ++m) visit(q.child(m));
  };

  // Root candidates: centers within R_inf + diam/2 of the origin suffice,
  // since dist(center, K) <= gamma forces |center|_inf <= R_inf + gamma.
  const double reach =
      ctx.body->outer_radius_inf() + 0.5 * ctx.p.unit_diameter(n) * s0;
  const auto lo = static_cast<std::int64_t>(std::floor(-reach / s0 - 0.5));
  const auto hi = static_cast<std::int64_t>(std::ceil(reach / s0 - 0.5));
  IntVector v = IntVector::Constant(n, lo);
  while (true) {
    DyadicCube root(a, 0, v);
    if (in_root_mesh(ctx, root)) visit(root);
    int i = 0;
    while (i < n && ++v[i] > hi) v[i++] = lo;
    if (i == n) break;
  }
  return out;
}

}  // namespace cubewalk
