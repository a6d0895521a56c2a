#include "cubewalk/finite.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cubewalk {

FiniteChain build_aux_chain(const WhitneyContext& ctx, int depth,
                            double volK) {
  const Enumeration en = enumerate_cubes(ctx, depth);
  const int m = static_cast<int>(en.complete.size());
  if (m == 0) throw std::invalid_argument("no complete cubes at this depth");
  const int n = ctx.body->dim();

  FiniteChain chain;
  chain.cubes = en.complete;
  chain.has_fused = true;
  chain.pi.resize(m + 1);
  double covered = 0.0;
  for (int i = 0; i < m; ++i) {
    chain.pi[i] = chain.cubes[i].volume() / volK;
    covered += chain.cubes[i].volume();
  }
  if (!(covered < volK))
    throw InconsistentVolumeError(
        "enumerated cube volume is not below the body volume");
  chain.pi[m] = 1.0 - covered / volK;

  chain.P = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    const DyadicCube& q = chain.cubes[i];
    const double surface = 2.0 * n * std::pow(q.side(), n - 1);
    double shared = 0.0;
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double area = shared_facet_area(q, chain.cubes[j]);
      if (area == 0.0) continue;
      shared += area;
      const double pij = mp_transition_probability(q, chain.cubes[j]);
      chain.P(i, j) = pij;
      row += pij;
    }
    // leftover boundary abuts half-side fused cubes: acceptance 1/2
    const double remainder = std::max(0.0, surface - shared);
    chain.P(i, m) = 0.25 * remainder / surface;
    row += chain.P(i, m);
    chain.P(i, i) = 1.0 - row;
  }
  double row = 0.0;
  for (int j = 0; j < m; ++j) {
    chain.P(m, j) = chain.pi[j] * chain.P(j, m) / chain.pi[m];
    row += chain.P(m, j);
  }
  chain.P(m, m) = 1.0 - row;
  return chain;
}

CutReport cut_conductance(const FiniteChain& chain, const std::vector<int>& s) {
  const int m = chain.num_states();
  std::vector<char> in(m, 0);
  for (int i : s) {
    if (i < 0 || i >= m) throw std::invalid_argument("state index out of range");
    in[i] = 1;
  }
  if (s.empty() || static_cast<int>(s.size()) >= m)
    throw std::invalid_argument("cut must be a nonempty proper subset");
  CutReport rep;
  rep.subset = s;
  for (int i : s) {
    rep.pi_s += chain.pi[i];
    for (int j = 0; j < m; ++j)
      if (!in[j]) rep.psi += chain.pi[i] * chain.P(i, j);
  }
  rep.phi = rep.psi / rep.pi_s;
  return rep;
}

double conductance_profile_bruteforce(const FiniteChain& chain, double alpha) {
  const int m = chain.num_states();
  if (m > 22)
    throw std::invalid_argument("exhaustive profile limited to 22 states");
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("alpha must lie in (0, 1/2]");
  Eigen::MatrixXd F = chain.pi.asDiagonal() * chain.P;
  F = 0.5 * (F + F.transpose()).eval();  // flows are symmetric in exact math
  Eigen::VectorXd rowoff(m);
  for (int i = 0; i < m; ++i) rowoff[i] = F.row(i).sum() - F(i, i);

  // Gray-code sweep: one state enters or leaves S per step, with
  // g[k] = flow between S and k maintained incrementally.
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  double pi_s = 0.0, psi = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t prev = 0;
  int size = 0;
  for (std::uint64_t i = 1; i < (1ULL << m); ++i) {
    const std::uint64_t code = i ^ (i >> 1);
    const int k = std::countr_zero(code ^ prev);
    if (code & (1ULL << k)) {
      psi += rowoff[k] - 2.0 * g[k];
      for (int j = 0; j < m; ++j) g[j] += F(k, j);
      pi_s += chain.pi[k];
      ++size;
    } else {
      for (int j = 0; j < m; ++j) g[j] -= F(k, j);
      psi -= rowoff[k] - 2.0 * g[k];
      pi_s -= chain.pi[k];
      --size;
    }
    prev = code;
    if (size > 0 && size < m && pi_s <= alpha + 1e-12)
      best = std::min(best, psi / pi_s);
  }
  return best;
}

HalfCubeReport half_cube_experiment(int n, LpExponent p, int depth) {
  if (n < 1 || n > 6 || depth < 1 || depth > 8)
    throw std::invalid_argument("half-cube experiment sized for n<=6, depth<=8");
  auto body = std::make_shared<AxisBox>(Eigen::VectorXd::Constant(n, -0.5),
                                        Eigen::VectorXd::Constant(n, 0.5));
  WhitneyContext ctx = WhitneyContext::make(body, p);

  HalfCubeReport rep;
  rep.n = n;
  rep.depth = depth;

  // Only cubes with upper_1 = 0 matter; descending the child half with
  // vertex_1 staying at -1 keeps the recursion on the hyperplane.
  std::function<void(const DyadicCube&)> visit = [&](const DyadicCube& q) {
    if (!is_subdivided(ctx, q)) {
      if (ctx.body->contains(q.center())) {
        rep.hyperplane_mass += q.volume();  // volK = 1
        ++rep.hyperplane_cubes;
      }
      return;
    }
    if (q.level == depth) {
      rep.frontier_touch_volume += q.volume();
      return;
    }
    for (unsigned m = 1; m < q.num_children(); m += 2) visit(q.child(m));
  };

  const double reach = 0.5 + 0.5 * p.unit_diameter(n);
  const auto lo = static_cast<std::int64_t>(std::floor(-reach - 0.5));
  const auto hi = static_cast<std::int64_t>(std::ceil(reach - 0.5));
  IntVector v = IntVector::Constant(n, lo);
  v[0] = -1;
  while (true) {
    DyadicCube root(0, 0, v);
    if (in_root_mesh(ctx, root)) visit(root);
    int i = 1;
    while (i < n && ++v[i] > hi) v[i++] = lo;
    if (i == n) break;
  }

  rep.psi = rep.hyperplane_mass / (4.0 * n);
  rep.phi = rep.psi / rep.pi_s;
  return rep;
}

}  // namespace cubewalk
