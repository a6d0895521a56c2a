#include "cubewalk/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubewalk/diagnostics.hpp"
#include "cubewalk/io.hpp"

namespace cubewalk {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Eigen::VectorXd& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt(v[i]);
  }
  return s;
}

using Config = std::map<std::string, std::string>;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return file;
}

void csv_header(std::ostream& os, const Config& cfg) {
  for (const auto& [k, v] : cfg) os << "# " << k << "=" << v << "\n";
}

nlohmann::json config_json(const Config& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : cfg) j[k] = v;
  return j;
}

Eigen::VectorXd parse_start_point(const std::string& spec, int dim) {
  Eigen::VectorXd x(dim);
  std::stringstream ss(spec);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= dim) throw CLI::ValidationError("--start has too many coordinates");
    x[i++] = std::stod(tok);
  }
  if (i != dim) throw CLI::ValidationError("--start has too few coordinates");
  return x;
}

Eigen::VectorXd resolve_start(const std::string& spec, const ConvexBody& body) {
  if (spec == "auto") return body.anchor();
  if (spec.rfind("point:", 0) == 0)
    return parse_start_point(spec.substr(6), body.dim());
  throw CLI::ValidationError("--start must be auto or point:x,y,...");
}

// Anchors of symmetric bodies often sit exactly on cube faces; jitter the
// start by a sub-ulp-of-the-body amount until locate succeeds.
DyadicCube locate_start(const WhitneyContext& ctx, const Eigen::VectorXd& x,
                        SplitMix64& rng) {
  const double r = ctx.body->outer_radius_inf();
  Eigen::VectorXd y = x;
  for (int attempt = 0; attempt < 16; ++attempt) {
    try {
      return locate_cube(ctx, y);
    } catch (const BoundaryPointError&) {
      for (int i = 0; i < y.size(); ++i)
        y[i] = x[i] + (rng.uniform() - 0.5) * std::ldexp(r, -20);
      if (!ctx.body->contains(y)) y = x;
    }
  }
  throw CLI::ValidationError("--start lies on a cube face; pick another point");
}

int cmd_decompose(const std::string& body_path, const std::string& p_str,
                  int depth, const std::string& out_path) {
  auto body = load_body(body_path);
  WhitneyContext ctx = WhitneyContext::make(body, LpExponent::parse(p_str));
  Enumeration en = enumerate_cubes(ctx, depth);
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  for (const auto& q : en.complete) {
    nlohmann::json j;
    j["level"] = q.level;
    j["vertex"] = std::vector<std::int64_t>(q.vertex.begin(), q.vertex.end());
    j["side"] = fmt(q.side());
    nlohmann::json c = nlohmann::json::array();
    const Eigen::VectorXd center = q.center();
    for (int i = 0; i < center.size(); ++i) c.push_back(center[i]);
    j["center"] = c;
    os << j.dump() << "\n";
  }
  nlohmann::json summary;
  summary["total_volume"] = en.complete_volume();
  summary["frontier_volume"] = en.frontier_volume();
  summary["cube_count"] = en.complete.size();
  summary["config"] = config_json({{"body", body_path},
                                   {"p", p_str},
                                   {"depth", std::to_string(depth)},
                                   {"subcommand", "decompose"}});
  os << summary.dump() << "\n";
  return 0;
}

int cmd_sample(const std::string& body_path, const std::string& walk,
               const std::string& p_str, long steps, long stride,
               std::uint64_t seed, const std::string& start,
               const std::string& out_path) {
  auto body = load_body(body_path);
  const LpExponent p = LpExponent::parse(p_str);
  SplitMix64 rng(seed);
  Config cfg{{"subcommand", "sample"}, {"body", body_path},   {"walk", walk},
             {"p", p_str},             {"steps", std::to_string(steps)},
             {"stride", std::to_string(stride)},
             {"seed", std::to_string(seed)},
             {"start", start}};
  if (walk != "mp" && walk != "chr")
    throw CLI::ValidationError("--walk must be mp or chr");
  const Eigen::VectorXd x0 = resolve_start(start, *body);
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  csv_header(os, cfg);

  std::vector<Eigen::VectorXd> points;
  if (walk == "chr") {
    Eigen::VectorXd x = x0;
    auto kernel = [&](const Eigen::VectorXd& s, SplitMix64& r) {
      return chr_step(*body, s, r);
    };
    auto traj = run_walk(kernel, x, steps, stride, rng, seed);
    points = std::move(traj.states);
  } else {
    WhitneyContext ctx = WhitneyContext::make(body, p);
    DyadicCube q0 = locate_start(ctx, x0, rng);
    auto kernel = [&](const DyadicCube& s, SplitMix64& r) {
      return mp_step(ctx, s, r);
    };
    auto traj = run_walk(kernel, q0, steps, stride, rng, seed);
    points = cube_trajectory_to_points(traj.states, rng);
  }
  for (const auto& pt : points) os << fmt(pt) << "\n";
  return 0;
}

int cmd_finite(const std::string& body_path, const std::string& p_str,
               int depth, double volume, const std::string& report, int n,
               const std::string& out_path) {
  const LpExponent p = LpExponent::parse(p_str);
  nlohmann::json j;
  Config cfg{{"subcommand", "finite"}, {"p", p_str},
             {"depth", std::to_string(depth)}, {"report", report}};
  if (report == "halfcube") {
    HalfCubeReport rep = half_cube_experiment(n, p, depth);
    cfg["n"] = std::to_string(n);
    j["pi_s"] = rep.pi_s;
    j["psi"] = rep.psi;
    j["phi"] = rep.phi;
    j["hyperplane_mass"] = rep.hyperplane_mass;
    j["hyperplane_cubes"] = rep.hyperplane_cubes;
    j["frontier_touch_volume"] = rep.frontier_touch_volume;
  } else {
    auto body = load_body(body_path);
    cfg["body"] = body_path;
    cfg["volume"] = fmt(volume);
    WhitneyContext ctx = WhitneyContext::make(body, p);
    FiniteChain chain = build_aux_chain(ctx, depth, volume);
    const int m = chain.num_states();
    if (report == "balance") {
      double row_err = 0.0, bal_err = 0.0;
      for (int i = 0; i < m; ++i) {
        row_err = std::max(row_err, std::abs(chain.P.row(i).sum() - 1.0));
        for (int k = i + 1; k < m; ++k)
          bal_err = std::max(bal_err, std::abs(chain.pi[i] * chain.P(i, k) -
                                               chain.pi[k] * chain.P(k, i)));
      }
      const Eigen::VectorXd res =
          chain.P.transpose() * chain.pi - chain.pi;
      j["states"] = m;
      j["row_sum_max_err"] = row_err;
      j["detailed_balance_max_err"] = bal_err;
      j["stationarity_max_err"] = res.lpNorm<Eigen::Infinity>();
      j["pi_fused"] = chain.pi[chain.fused_index()];
    } else if (report == "cut") {
      std::vector<int> s;
      for (int i = 0; i < static_cast<int>(chain.cubes.size()); ++i)
        if (chain.cubes[i].center()[0] < 0.0) s.push_back(i);
      CutReport rep = cut_conductance(chain, s);
      j["cut"] = "cubes with center_1 < 0 (fused state excluded)";
      j["size"] = rep.subset.size();
      j["psi"] = rep.psi;
      j["pi_s"] = rep.pi_s;
      j["phi"] = rep.phi;
    } else if (report == "profile") {
      j["states"] = m;
      j["alpha"] = 0.5;
      j["profile"] = conductance_profile_bruteforce(chain, 0.5);
    } else {
      throw CLI::ValidationError(
          "--report must be balance, cut, profile, or halfcube");
    }
  }
  j["config"] = config_json(cfg);
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  os << j.dump(2) << "\n";
  return 0;
}

int cmd_mixcurve(const std::string& body_path, const std::string& walk,
                 const std::string& p_str, int depth, double volume,
                 int replicas, const std::string& checkpoints_str, int grid,
                 std::uint64_t seed, const std::string& out_path) {
  auto body = load_body(body_path);
  const LpExponent p = LpExponent::parse(p_str);
  SplitMix64 rng(seed);
  std::vector<long> checkpoints;
  std::stringstream ss(checkpoints_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) checkpoints.push_back(std::stol(tok));
  Config cfg{{"subcommand", "mixcurve"},
             {"body", body_path},
             {"walk", walk},
             {"p", p_str},
             {"replicas", std::to_string(replicas)},
             {"checkpoints", checkpoints_str},
             {"seed", std::to_string(seed)}};
  std::vector<MixPoint> curve;
  if (walk == "mp") {
    cfg["depth"] = std::to_string(depth);
    cfg["volume"] = fmt(volume);
    WhitneyContext ctx = WhitneyContext::make(body, p);
    Enumeration en = enumerate_cubes(ctx, depth);
    DyadicCube start = locate_start(ctx, body->anchor(), rng);
    curve = mp_mixing_curve(ctx, en, volume, start, checkpoints, replicas, rng);
  } else if (walk == "chr") {
    cfg["grid"] = std::to_string(grid);
    auto start = [&](SplitMix64&) { return body->anchor(); };
    curve = chr_mixing_curve(*body, start, checkpoints, replicas, grid, rng);
  } else {
    throw CLI::ValidationError("--walk must be mp or chr");
  }
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  csv_header(os, cfg);
  os << "step,tv,stderr\n";
  for (const auto& pt : curve)
    os << pt.step << "," << fmt(pt.tv) << "," << fmt(pt.stderr_) << "\n";
  return 0;
}

int cmd_uniformity(const std::string& body_path, long steps, long burnin,
                   long stride, int grid, std::uint64_t seed,
                   const std::string& start, const std::string& out_path) {
  auto body = load_body(body_path);
  SplitMix64 rng(seed);
  Eigen::VectorXd x = resolve_start(start, *body);
  for (long i = 0; i < burnin; ++i) x = chr_step(*body, x, rng);
  std::vector<Eigen::VectorXd> pts;
  for (long i = 0; i < steps; ++i) {
    x = chr_step(*body, x, rng);
    if ((i + 1) % stride == 0) pts.push_back(x);
  }
  ChiSquareReport rep = chi_square_uniformity(pts, *body, grid, rng);
  nlohmann::json j;
  j["statistic"] = rep.statistic;
  j["p_value"] = rep.p_value;
  j["dof"] = rep.dof;
  j["bins"] = rep.bins;
  j["samples"] = pts.size();
  j["config"] = config_json({{"subcommand", "uniformity"},
                             {"body", body_path},
                             {"steps", std::to_string(steps)},
                             {"burnin", std::to_string(burnin)},
                             {"stride", std::to_string(stride)},
                             {"grid", std::to_string(grid)},
                             {"seed", std::to_string(seed)},
                             {"start", start}});
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  os << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Markov chain samplers for convex bodies over multiscale cube "
               "decompositions"};
  app.require_subcommand(1);

  std::string body_path, p_str = "inf", walk = "mp", start = "auto";
  std::string out_path, report = "balance", checkpoints = "0,1,2,4,8,16";
  int depth = 4, grid = 5, replicas = 1000, n = 2;
  long steps = 1000, stride = 1, burnin = 0;
  double volume = 0.0;
  std::uint64_t seed = 1;

  auto* dec = app.add_subcommand("decompose", "Enumerate decomposition cubes");
  dec->add_option("--body", body_path)->required();
  dec->add_option("--p", p_str);
  dec->add_option("--depth", depth);
  dec->add_option("--output", out_path);

  auto* smp = app.add_subcommand("sample", "Run a sampling walk");
  smp->add_option("--body", body_path)->required();
  smp->add_option("--walk", walk);
  smp->add_option("--p", p_str);
  smp->add_option("--steps", steps);
  smp->add_option("--stride", stride);
  smp->add_option("--seed", seed);
  smp->add_option("--start", start);
  smp->add_option("--output", out_path);

  auto* fin = app.add_subcommand("finite", "Exact finite chain reports");
  fin->add_option("--body", body_path);
  fin->add_option("--p", p_str);
  fin->add_option("--depth", depth);
  fin->add_option("--volume", volume);
  fin->add_option("--report", report);
  fin->add_option("--n", n);
  fin->add_option("--output", out_path);

  auto* mix = app.add_subcommand("mixcurve", "Empirical TV mixing curve");
  mix->add_option("--body", body_path)->required();
  mix->add_option("--walk", walk);
  mix->add_option("--p", p_str);
  mix->add_option("--depth", depth);
  mix->add_option("--volume", volume);
  mix->add_option("--replicas", replicas);
  mix->add_option("--checkpoints", checkpoints);
  mix->add_option("--grid", grid);
  mix->add_option("--seed", seed);
  mix->add_option("--output", out_path);

  auto* uni = app.add_subcommand("uniformity", "Chi-square uniformity test");
  uni->add_option("--body", body_path)->required();
  uni->add_option("--steps", steps);
  uni->add_option("--burnin", burnin);
  uni->add_option("--stride", stride);
  uni->add_option("--grid", grid);
  uni->add_option("--seed", seed);
  uni->add_option("--start", start);
  uni->add_option("--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dec->parsed()) return cmd_decompose(body_path, p_str, depth, out_path);
    if (smp->parsed())
      return cmd_sample(body_path, walk, p_str, steps, stride, seed, start,
                        out_path);
    if (fin->parsed())
      return cmd_finite(body_path, p_str, depth, volume, report, n, out_path);
    if (mix->parsed())
      return cmd_mixcurve(body_path, walk, p_str, depth, volume, replicas,
                          checkpoints, grid, seed, out_path);
    if (uni->parsed())
      return cmd_uniformity(body_path, steps, burnin, stride, grid, seed,
                            start, out_path);
  } catch (const BodyFormatError& e) {
    std::cerr << "body error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cubewalk
