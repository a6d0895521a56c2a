#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cubewalk {

// Norm index p in [1, inf]. Infinity is carried as a tag so that n^(1/p)
// and the dual exponent are exact for p in {1, inf}.
class LpExponent {
 public:
  static LpExponent one() { return LpExponent(1.0, false); }
  static LpExponent two() { return LpExponent(2.0, false); }
  static LpExponent infinity() { return LpExponent(0.0, true); }

  static LpExponent finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
      throw std::invalid_argument("norm exponent must satisfy p >= 1");
    return LpExponent(p, false);
  }

  static LpExponent parse(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return infinity();
    return finite(std::stod(s));
  }

  bool is_inf() const { return inf_; }
  double value() const {
    return inf_ ? std::numeric_limits<double>::infinity() : p_;
  }

  // n^(1/p); the lp diameter of a unit cube in dimension n.
  double unit_diameter(int n) const {
    if (inf_) return 1.0;
    if (p_ == 1.0) return static_cast<double>(n);
    if (p_ == 2.0) return std::sqrt(static_cast<double>(n));
    return std::pow(static_cast<double>(n), 1.0 / p_);
  }

  LpExponent dual() const {
    if (inf_) return one();
    if (p_ == 1.0) return infinity();
    return finite(p_ / (p_ - 1.0));
  }

  double norm(const Eigen::VectorXd& v) const {
    if (inf_) return v.lpNorm<Eigen::Infinity>();
    if (p_ == 1.0) return v.lpNorm<1>();
    if (p_ == 2.0) return v.norm();
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p_);
    return std::pow(s, 1.0 / p_);
  }

  std::string str() const {
    if (inf_) return "inf";
    if (p_ == static_cast<long>(p_)) return std::to_string(static_cast<long>(p_));
    return std::to_string(p_);
  }

  bool operator==(const LpExponent& o) const {
    return inf_ == o.inf_ && (inf_ || p_ == o.p_);
  }

 private:
  LpExponent(double p, bool inf) : p_(p), inf_(inf) {}
  double p_;
  bool inf_;
};

}  // namespace cubewalk
