#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "cubewalk/errors.hpp"
#include "cubewalk/lp.hpp"

namespace cubewalk {

// Membership oracle for a bounded convex body K with sandwich radii
// r_p * B_p (about an interior anchor point) and R_inf * B_inf, plus
// optional exact lp-distance capabilities.
//
// Distance conventions:
//   distance_to_boundary(x, p): dist_p(x, R^n \ K°) for x in K (0 on the
//     boundary; throws domain_error for x outside K).
//   distance_to_set(x, p): dist_p(x, K), 0 for x in K.
//
// Bodies are immutable after construction and safe for concurrent reads.
class ConvexBody {
 public:
  virtual ~ConvexBody() = default;

  int dim() const { return n_; }

  // Precision budget L (bits) for binary-search based answers.
  int precision_bits() const { return precision_bits_; }
  void set_precision_bits(int bits) { precision_bits_ = bits; }

  virtual bool contains(const Eigen::VectorXd& x) const = 0;
  virtual double outer_radius_inf() const = 0;
  virtual double inner_radius(LpExponent p) const = 0;
  virtual Eigen::VectorXd anchor() const = 0;  // strict interior point

  virtual bool has_exact_distance(LpExponent /*p*/) const { return false; }

  // Exact bodies override. The generic fallback supports p = 1 only, via
  // 2n ray binary searches to additive precision ~2^-L; results below the
  // 2^(-L+7) margin raise MarginError instead of returning an unreliable
  // multiplicative approximation.
  virtual double distance_to_boundary(const Eigen::VectorXd& x,
                                      LpExponent p) const;

  virtual double distance_to_set(const Eigen::VectorXd& x, LpExponent p) const;

  // True iff dist_p(x, R^n \ K°) > gamma, for x in K.
  virtual bool distance_exceeds(const Eigen::VectorXd& x, double gamma,
                                LpExponent p) const;

  // Chord of K through x along axis j: returns (t_minus, t_plus) with
  // t_minus <= 0 <= t_plus and x + t e_j in K on [t_minus, t_plus].
  // Exact bodies override; the fallback bisects membership to `tol`.
  virtual std::pair<double, double> chord(const Eigen::VectorXd& x, int axis,
                                          double tol) const;

 protected:
  explicit ConvexBody(int n) : n_(n) {}

  void check_dim(const Eigen::VectorXd& x) const;
  void check_interior_for_distance(const Eigen::VectorXd& x) const;

  double generic_l1_distance(const Eigen::VectorXd& x) const;
  std::pair<double, double> generic_chord(const Eigen::VectorXd& x, int axis,
                                          double tol) const;

 private:
  int n_;
  int precision_bits_ = 52;
};

// Axis-aligned box [lower, upper]. All distances exact for every p.
class AxisBox final : public ConvexBody {
 public:
  AxisBox(Eigen::VectorXd lower, Eigen::VectorXd upper);

  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  bool contains(const Eigen::VectorXd& x) const override;
  double outer_radius_inf() const override;
  double inner_radius(LpExponent p) const override;
  Eigen::VectorXd anchor() const override;
  bool has_exact_distance(LpExponent p) const override { return true; }
  double distance_to_boundary(const Eigen::VectorXd& x,
                              LpExponent p) const override;
  double distance_to_set(const Eigen::VectorXd& x, LpExponent p) const override;
  std::pair<double, double> chord(const Eigen::VectorXd& x, int axis,
                                  double tol) const override;

 private:
  Eigen::VectorXd lower_, upper_;
};

// lp ball {x : ||x - center||_q <= radius} with ball exponent q.
class LpBall final : public ConvexBody {
 public:
  LpBall(Eigen::VectorXd center, double radius, LpExponent exponent);

  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  LpExponent exponent() const { return exponent_; }

  bool contains(const Eigen::VectorXd& x) const override;
  double outer_radius_inf() const override;
  double inner_radius(LpExponent p) const override;
  Eigen::VectorXd anchor() const override { return center_; }
  bool has_exact_distance(LpExponent p) const override;
  double distance_to_boundary(const Eigen::VectorXd& x,
                              LpExponent p) const override;
  double distance_to_set(const Eigen::VectorXd& x, LpExponent p) const override;
  std::pair<double, double> chord(const Eigen::VectorXd& x, int axis,
                                  double tol) const override;

 private:
  Eigen::VectorXd center_;
  double radius_;
  LpExponent exponent_;
};

// H-polytope K = {y : A y <= b} with a certified strict interior point.
// Interior lp distance is the Hölder closed form min_i (b_i - a_i.x)/|a_i|_q;
// the exterior distance walks the face lattice (n <= 3).
class HPolytope final : public ConvexBody {
 public:
  HPolytope(Eigen::MatrixXd A, Eigen::VectorXd b,
            Eigen::VectorXd interior_point);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& interior_point() const { return interior_; }
  int num_constraints() const { return static_cast<int>(A_.rows()); }

  bool contains(const Eigen::VectorXd& x) const override;
  double outer_radius_inf() const override;
  double inner_radius(LpExponent p) const override;
  Eigen::VectorXd anchor() const override { return interior_; }
  bool has_exact_distance(LpExponent p) const override { return true; }
  double distance_to_boundary(const Eigen::VectorXd& x,
                              LpExponent p) const override;
  double distance_to_set(const Eigen::VectorXd& x, LpExponent p) const override;
  std::pair<double, double> chord(const Eigen::VectorXd& x, int axis,
                                  double tol) const override;

  // Feasible vertices (intersections of n constraints); used for the outer
  // radius and by the exterior distance.
  std::vector<Eigen::VectorXd> vertices() const;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::VectorXd interior_;
  mutable double outer_radius_cache_ = -1.0;
};

// dist_p(x, {A y <= b}) for x outside the polytope, by minimizing over the
// face lattice: facet affine hulls in closed form, edges by convex line
// search, vertices directly. Supports n <= 3.
double polytope_exterior_distance(const Eigen::MatrixXd& A,
                                  const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x, LpExponent p);

// dist_p(x, ∂K) from either side: distance to the complement for interior
// points, distance to K for exterior points.
double boundary_distance(const ConvexBody& body, const Eigen::VectorXd& x,
                         LpExponent p);

}  // namespace cubewalk
