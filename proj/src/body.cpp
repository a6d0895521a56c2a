#include "cubewalk/body.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace cubewalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Direction d with ||d||_p = 1 attaining Hölder equality a.d = ||a||_q.
Eigen::VectorXd holder_direction(const Eigen::VectorXd& a, LpExponent p) {
  const int n = static_cast<int>(a.size());
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  if (p.is_inf()) {
    for (int i = 0; i < n; ++i) d[i] = sign(a[i]);
    return d;
  }
  if (p.value() == 1.0) {
    int imax = 0;
    a.cwiseAbs().maxCoeff(&imax);
    d[imax] = sign(a[imax]);
    return d;
  }
  if (p.value() == 2.0) return a / a.norm();
  const double q = p.dual().value();
  const double aq = p.dual().norm(a);
  for (int i = 0; i < n; ++i)
    d[i] = sign(a[i]) * std::pow(std::abs(a[i]) / aq, q - 1.0);
  return d;
}

// Golden-section minimization of a convex function on [lo, hi].
template <typename F>
double minimize_convex(F f, double lo, double hi, int iters = 200) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 0; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return std::min({f(a), f(b), fc, fd});
}

}  // namespace

// ---------------------------------------------------------------------------
// ConvexBody generic fallbacks (membership-only bodies, p = 1)
// ---------------------------------------------------------------------------

void ConvexBody::check_dim(const Eigen::VectorXd& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("point dimension does not match body");
  for (int i = 0; i < n_; ++i)
    if (!std::isfinite(x[i]))
      throw std::invalid_argument("point has non-finite coordinates");
}

void ConvexBody::check_interior_for_distance(const Eigen::VectorXd& x) const {
  check_dim(x);
  if (!contains(x)) throw std::domain_error("point is not in the body");
}

std::pair<double, double> ConvexBody::generic_chord(const Eigen::VectorXd& x,
                                                    int axis,
                                                    double tol) const {
  const double reach = 2.0 * outer_radius_inf() + 1.0;
  Eigen::VectorXd y = x;
  auto inside = [&](double t) {
    y[axis] = x[axis] + t;
    return contains(y);
  };
  auto search = [&](double dir) {
    double lo = 0.0, hi = dir * reach;
    // invariant: inside at lo, outside at hi
    while (std::abs(hi - lo) > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;  // one ulp apart
      (inside(mid) ? lo : hi) = mid;
    }
    return lo;
  };
  return {search(-1.0), search(+1.0)};
}

double ConvexBody::generic_l1_distance(const Eigen::VectorXd& x) const {
  const double tol =
      outer_radius_inf() * std::ldexp(1.0, -precision_bits_);
  double best = kInf;
  for (int j = 0; j < n_; ++j) {
    auto [tm, tp] = generic_chord(x, j, tol);
    best = std::min({best, tp, -tm});
  }
  const double margin = outer_radius_inf() * std::ldexp(1.0, -precision_bits_ + 8);
  if (best < margin)
    throw MarginError(
        "point too close to the boundary for the precision budget");
  return best;
}

double ConvexBody::distance_to_boundary(const Eigen::VectorXd& x,
                                        LpExponent p) const {
  check_interior_for_distance(x);
  if (!p.is_inf() && p.value() == 1.0) return generic_l1_distance(x);
  throw UnsupportedCapabilityError(
      "only the l1 distance is available through a membership oracle");
}

double ConvexBody::distance_to_set(const Eigen::VectorXd& x,
                                   LpExponent p) const {
  check_dim(x);
  if (contains(x)) return 0.0;
  throw UnsupportedCapabilityError(
      "exterior distance is not available through a membership oracle");
}

bool ConvexBody::distance_exceeds(const Eigen::VectorXd& x, double gamma,
                                  LpExponent p) const {
  check_dim(x);
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("gamma must be finite and nonnegative");
  if (has_exact_distance(p)) {
    if (!contains(x)) throw std::domain_error("point is not in the body");
    return distance_to_boundary(x, p) > gamma;
  }
  if (p.is_inf() || p.value() != 1.0)
    throw UnsupportedCapabilityError(
        "inequality oracle needs p = 1 on a membership-only body");
  // dist_l1(x, boundary) > gamma  iff  all 2n axis probes stay inside.
  Eigen::VectorXd y = x;
  for (int j = 0; j < n_; ++j) {
    for (double s : {-1.0, 1.0}) {
      y[j] = x[j] + s * gamma;
      if (!contains(y)) return false;
    }
    y[j] = x[j];
  }
  return true;
}

std::pair<double, double> ConvexBody::chord(const Eigen::VectorXd& x, int axis,
                                            double tol) const {
  check_interior_for_distance(x);
  if (axis < 0 || axis >= n_) throw std::invalid_argument("axis out of range");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  return generic_chord(x, axis, tol);
}

// ---------------------------------------------------------------------------
// AxisBox
// ---------------------------------------------------------------------------

AxisBox::AxisBox(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : ConvexBody(static_cast<int>(lower.size())),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("box corner dimensions differ");
  if (((upper_ - lower_).array() <= 0.0).any())
    throw std::invalid_argument("box requires lower < upper componentwise");
}

bool AxisBox::contains(const Eigen::VectorXd& x) const {
  check_dim(x);
  return (x.array() >= lower_.array()).all() &&
         (x.array() <= upper_.array()).all();
}

double AxisBox::outer_radius_inf() const {
  return std::max(lower_.lpNorm<Eigen::Infinity>(),
                  upper_.lpNorm<Eigen::Infinity>());
}

double AxisBox::inner_radius(LpExponent) const {
  // A p-ball centered at the midpoint first touches the nearest face pair.
  return 0.5 * (upper_ - lower_).minCoeff();
}

Eigen::VectorXd AxisBox::anchor() const { return 0.5 * (lower_ + upper_); }

double AxisBox::distance_to_boundary(const Eigen::VectorXd& x,
                                     LpExponent) const {
  check_interior_for_distance(x);
  // Each face is a halfspace with a coordinate normal, so the lp distance
  // to the complement is the smallest face margin, for every p.
  return std::min((x - lower_).minCoeff(), (upper_ - x).minCoeff());
}

double AxisBox::distance_to_set(const Eigen::VectorXd& x, LpExponent p) const {
  check_dim(x);
  const Eigen::VectorXd over =
      (lower_ - x).cwiseMax(x - upper_).cwiseMax(0.0);
  return p.norm(over);
}

std::pair<double, double> AxisBox::chord(const Eigen::VectorXd& x, int axis,
                                         double) const {
  check_interior_for_distance(x);
  return {lower_[axis] - x[axis], upper_[axis] - x[axis]};
}

// ---------------------------------------------------------------------------
// LpBall
// ---------------------------------------------------------------------------

LpBall::LpBall(Eigen::VectorXd center, double radius, LpExponent exponent)
    : ConvexBody(static_cast<int>(center.size())),
      center_(std::move(center)),
      radius_(radius),
      exponent_(exponent) {
  if (!(radius_ > 0.0)) throw std::invalid_argument("ball radius must be > 0");
}

bool LpBall::contains(const Eigen::VectorXd& x) const {
  check_dim(x);
  return exponent_.norm(x - center_) <= radius_;
}

double LpBall::outer_radius_inf() const {
  return center_.lpNorm<Eigen::Infinity>() + radius_;
}

double LpBall::inner_radius(LpExponent p) const {
  const double inv_p = p.is_inf() ? 0.0 : 1.0 / p.value();
  const double inv_q = exponent_.is_inf() ? 0.0 : 1.0 / exponent_.value();
  return radius_ * std::min(1.0, std::pow(static_cast<double>(dim()),
                                          inv_p - inv_q));
}

bool LpBall::has_exact_distance(LpExponent p) const {
  if (exponent_.is_inf() || exponent_.value() == 1.0) return true;
  if (p == exponent_) return true;
  if (exponent_.value() == 2.0 && (p.is_inf() || p.value() == 1.0)) return true;
  return false;
}

double LpBall::distance_to_boundary(const Eigen::VectorXd& x,
                                    LpExponent p) const {
  check_interior_for_distance(x);
  const Eigen::VectorXd y = x - center_;
  if (exponent_.is_inf()) return radius_ - y.lpNorm<Eigen::Infinity>();
  if (p == exponent_) return radius_ - exponent_.norm(y);
  if (exponent_.value() == 1.0) {
    // 2^n facets with sign-vector normals of dual norm n^(1/q'), q' = dual(p).
    return (radius_ - y.lpNorm<1>()) / p.dual().unit_diameter(dim());
  }
  if (exponent_.value() == 2.0) {
    const double n2 = y.squaredNorm();
    if (p.is_inf()) {
      const double l1 = y.lpNorm<1>();
      const double nn = static_cast<double>(dim());
      return (-l1 + std::sqrt(l1 * l1 + nn * (radius_ * radius_ - n2))) / nn;
    }
    if (p.value() == 1.0) {
      const double m = y.lpNorm<Eigen::Infinity>();
      return -m + std::sqrt(m * m + radius_ * radius_ - n2);
    }
  }
  return ConvexBody::distance_to_boundary(x, p);
}

double LpBall::distance_to_set(const Eigen::VectorXd& x, LpExponent p) const {
  check_dim(x);
  if (contains(x)) return 0.0;
  const Eigen::VectorXd y = x - center_;
  if (exponent_.is_inf()) {
    const Eigen::VectorXd over =
        (y.array().abs() - radius_).cwiseMax(0.0).matrix();
    return p.norm(over);
  }
  if (p == exponent_) return exponent_.norm(y) - radius_;
  if (exponent_.value() == 1.0 && dim() <= 3) {
    const int m = 1 << dim();
    Eigen::MatrixXd A(m, dim());
    Eigen::VectorXd b = Eigen::VectorXd::Constant(m, radius_);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < dim(); ++i)
        A(k, i) = ((k >> i) & 1) ? 1.0 : -1.0;
    return polytope_exterior_distance(A, b, y, p);
  }
  throw UnsupportedCapabilityError(
      "exterior lp distance unsupported for this ball/norm combination");
}

std::pair<double, double> LpBall::chord(const Eigen::VectorXd& x, int axis,
                                        double tol) const {
  check_interior_for_distance(x);
  const Eigen::VectorXd y = x - center_;
  if (exponent_.is_inf()) {
    return {-radius_ - y[axis], radius_ - y[axis]};
  }
  if (exponent_.value() == 2.0) {
    const double rest = y.squaredNorm() - y[axis] * y[axis];
    const double disc = std::sqrt(std::max(0.0, radius_ * radius_ - rest));
    return {-y[axis] - disc, -y[axis] + disc};
  }
  if (exponent_.value() == 1.0) {
    const double rest = y.lpNorm<1>() - std::abs(y[axis]);
    const double reach = radius_ - rest;
    return {-y[axis] - reach, -y[axis] + reach};
  }
  return generic_chord(x, axis, tol);
}

// ---------------------------------------------------------------------------
// HPolytope
// ---------------------------------------------------------------------------

HPolytope::HPolytope(Eigen::MatrixXd A, Eigen::VectorXd b,
                     Eigen::VectorXd interior_point)
    : ConvexBody(static_cast<int>(A.cols())),
      A_(std::move(A)),
      b_(std::move(b)),
      interior_(std::move(interior_point)) {
  if (A_.rows() != b_.size())
    throw std::invalid_argument("constraint count mismatch between A and b");
  if (interior_.size() != A_.cols())
    throw std::invalid_argument("interior point dimension mismatch");
  for (int i = 0; i < A_.rows(); ++i)
    if (A_.row(i).norm() == 0.0)
      throw std::invalid_argument("degenerate constraint a_i = 0");
  if (((b_ - A_ * interior_).array() <= 0.0).any())
    throw std::invalid_argument("interior point is not strictly feasible");
}

bool HPolytope::contains(const Eigen::VectorXd& x) const {
  check_dim(x);
  return ((A_ * x - b_).array() <= 0.0).all();
}

std::vector<Eigen::VectorXd> HPolytope::vertices() const {
  const int n = dim();
  const int m = num_constraints();
  const double scale = std::max(1.0, b_.cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(n);
  // all n-subsets of constraints
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd rhs(n);
      for (int r = 0; r < n; ++r) {
        M.row(r) = A_.row(idx[r]);
        rhs[r] = b_[idx[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd v = lu.solve(rhs);
      if (((A_ * v - b_).array() <= 1e-9 * scale).all()) out.push_back(v);
      return;
    }
    for (int i = start; i <= m - (n - k); ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  return out;
}

double HPolytope::outer_radius_inf() const {
  if (outer_radius_cache_ < 0.0) {
    double r = interior_.lpNorm<Eigen::Infinity>();
    for (const auto& v : vertices())
      r = std::max(r, v.lpNorm<Eigen::Infinity>());
    outer_radius_cache_ = r;
  }
  return outer_radius_cache_;
}

double HPolytope::inner_radius(LpExponent p) const {
  return distance_to_boundary(interior_, p);
}

double HPolytope::distance_to_boundary(const Eigen::VectorXd& x,
                                       LpExponent p) const {
  check_interior_for_distance(x);
  const LpExponent q = p.dual();
  double best = kInf;
  for (int i = 0; i < A_.rows(); ++i)
    best = std::min(best, (b_[i] - A_.row(i).dot(x)) / q.norm(A_.row(i)));
  return best;
}

double HPolytope::distance_to_set(const Eigen::VectorXd& x,
                                  LpExponent p) const {
  check_dim(x);
  if (contains(x)) return 0.0;
  return polytope_exterior_distance(A_, b_, x, p);
}

std::pair<double, double> HPolytope::chord(const Eigen::VectorXd& x, int axis,
                                           double) const {
  check_interior_for_distance(x);
  double tm = -kInf, tp = kInf;
  for (int i = 0; i < A_.rows(); ++i) {
    const double c = A_(i, axis);
    const double s = b_[i] - A_.row(i).dot(x);
    if (c > 0.0)
      tp = std::min(tp, s / c);
    else if (c < 0.0)
      tm = std::max(tm, s / c);
    else if (s < 0.0)
      throw std::domain_error("point is not in the polytope");
  }
  if (!std::isfinite(tm) || !std::isfinite(tp))
    throw std::domain_error("polytope is unbounded along this axis");
  return {tm, tp};
}

// ---------------------------------------------------------------------------
// Exterior lp distance to a polytope by face-lattice minimization
// ---------------------------------------------------------------------------

double polytope_exterior_distance(const Eigen::MatrixXd& A,
                                  const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x, LpExponent p) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(A.rows());
  if (n > 3)
    throw UnsupportedCapabilityError(
        "exterior polytope distance implemented for n <= 3");
  const double scale =
      std::max({1.0, b.cwiseAbs().maxCoeff(), x.cwiseAbs().maxCoeff()});
  const double feas_tol = 1e-9 * scale;
  const LpExponent q = p.dual();
  double best = kInf;

  auto feasible = [&](const Eigen::VectorXd& y) {
    return ((A * y - b).array() <= feas_tol).all();
  };

  // Facet affine hulls: closed-form minimizer per hyperplane; a convex
  // minimum not attained there lies on the relative boundary, which the
  // edge/vertex passes below pick up.
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd a = A.row(i).transpose();
    const double t = (a.dot(x) - b[i]) / q.norm(a);
    const Eigen::VectorXd y = x - t * holder_direction(a, p);
    if (feasible(y)) best = std::min(best, std::abs(t));
  }

  // Edges (n = 3): intersection lines of constraint pairs, clipped by the
  // remaining constraints, searched as 1-d convex problems.
  if (n == 3) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const Eigen::Vector3d ai = A.row(i).transpose();
        const Eigen::Vector3d aj = A.row(j).transpose();
        Eigen::Vector3d d = ai.cross(aj);
        if (d.norm() < 1e-12 * ai.norm() * aj.norm()) continue;
        d.normalize();
        Eigen::MatrixXd M(2, 3);
        M.row(0) = ai.transpose();
        M.row(1) = aj.transpose();
        Eigen::Vector2d rhs(b[i], b[j]);
        const Eigen::VectorXd y0 =
            M.completeOrthogonalDecomposition().solve(rhs);
        double tlo = -kInf, thi = kInf;
        bool empty = false;
        for (int k = 0; k < m && !empty; ++k) {
          const double c = A.row(k).dot(d);
          const double s = b[k] - A.row(k).dot(y0);
          if (c > 1e-12)
            thi = std::min(thi, s / c);
          else if (c < -1e-12)
            tlo = std::max(tlo, s / c);
          else if (s < -feas_tol)
            empty = true;
        }
        if (empty || tlo > thi || !std::isfinite(tlo) || !std::isfinite(thi))
          continue;
        auto f = [&](double t) { return p.norm(y0 + t * d - x); };
        best = std::min(best, minimize_convex(f, tlo, thi));
      }
    }
  }

  // Vertices.
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd rhs(n);
      for (int r = 0; r < n; ++r) {
        M.row(r) = A.row(idx[r]);
        rhs[r] = b[idx[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd v = lu.solve(rhs);
      if (feasible(v)) best = std::min(best, p.norm(v - x));
      return;
    }
    for (int i = start; i <= m - (n - k); ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  if (n >= 2) rec(0, 0);

  if (!std::isfinite(best))
    throw std::runtime_error("polytope appears to be empty");
  return best;
}

double boundary_distance(const ConvexBody& body, const Eigen::VectorXd& x,
                         LpExponent p) {
  return body.contains(x) ? body.distance_to_boundary(x, p)
                          : body.distance_to_set(x, p);
}

}  // namespace cubewalk
