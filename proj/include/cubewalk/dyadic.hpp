#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "cubewalk/lp.hpp"

namespace cubewalk {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Axis-aligned dyadic cube 2^(a-k) * (v + [0,1]^n), identified by the global
// scale exponent a, its level k >= 0, and the integer lattice vertex v.
// All geometry derived from it (side, corners, centers, facet overlaps) is
// dyadic and therefore exact in double precision at the scales used here.
struct DyadicCube {
  int scale_exponent = 0;  // a
  int level = 0;           // k
  IntVector vertex;        // v

  DyadicCube() = default;
  DyadicCube(int a, int k, IntVector v)
      : scale_exponent(a), level(k), vertex(std::move(v)) {}

  int dim() const { return static_cast<int>(vertex.size()); }

  double side() const { return std::ldexp(1.0, scale_exponent - level); }

  double volume() const {
    return std::ldexp(1.0, (scale_exponent - level) * dim());
  }

  double diameter(LpExponent p) const { return p.unit_diameter(dim()) * side(); }

  Eigen::VectorXd lower() const {
    const double s = side();
    Eigen::VectorXd lo(dim());
    for (int i = 0; i < dim(); ++i) lo[i] = s * static_cast<double>(vertex[i]);
    return lo;
  }

  Eigen::VectorXd upper() const {
    const double s = side();
    Eigen::VectorXd hi(dim());
    for (int i = 0; i < dim(); ++i)
      hi[i] = s * static_cast<double>(vertex[i] + 1);
    return hi;
  }

  Eigen::VectorXd center() const {
    const double s = side();
    Eigen::VectorXd c(dim());
    for (int i = 0; i < dim(); ++i)
      c[i] = s * (static_cast<double>(vertex[i]) + 0.5);
    return c;
  }

  bool contains_interior(const Eigen::VectorXd& x) const {
    const double s = side();
    for (int i = 0; i < dim(); ++i) {
      const double lo = s * static_cast<double>(vertex[i]);
      if (!(x[i] > lo && x[i] < lo + s)) return false;
    }
    return true;
  }

  bool contains_closed(const Eigen::VectorXd& x) const {
    const double s = side();
    for (int i = 0; i < dim(); ++i) {
      const double lo = s * static_cast<double>(vertex[i]);
      if (!(x[i] >= lo && x[i] <= lo + s)) return false;
    }
    return true;
  }

  DyadicCube parent() const {
    IntVector v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = vertex[i] >> 1;  // floor division
    return DyadicCube(scale_exponent, level - 1, std::move(v));
  }

  // Child selected by a bitmask over axes (bit i set -> upper half on axis i).
  DyadicCube child(unsigned mask) const {
    IntVector v(dim());
    for (int i = 0; i < dim(); ++i)
      v[i] = 2 * vertex[i] + ((mask >> i) & 1U);
    return DyadicCube(scale_exponent, level + 1, std::move(v));
  }

  unsigned num_children() const { return 1U << dim(); }

  bool operator==(const DyadicCube& o) const {
    return scale_exponent == o.scale_exponent && level == o.level &&
           vertex == o.vertex;
  }
};

// (n-1)-volume of the shared facet piece of two cubes; 0 if they do not abut.
// Exact: all coordinates are dyadic rationals.
inline double shared_facet_area(const DyadicCube& a, const DyadicCube& b) {
  const int n = a.dim();
  const double sa = a.side(), sb = b.side();
  int touch_axis = -1;
  double area = 1.0;
  for (int i = 0; i < n; ++i) {
    const double alo = sa * static_cast<double>(a.vertex[i]);
    const double ahi = alo + sa;
    const double blo = sb * static_cast<double>(b.vertex[i]);
    const double bhi = blo + sb;
    const double lo = std::max(alo, blo);
    const double hi = std::min(ahi, bhi);
    if (hi > lo) {
      area *= hi - lo;
    } else if (hi == lo) {
      if (touch_axis >= 0) return 0.0;  // touch along an edge or corner only
      touch_axis = i;
    } else {
      return 0.0;
    }
  }
  return touch_axis >= 0 ? area : 0.0;
}

inline bool abutting(const DyadicCube& a, const DyadicCube& b) {
  return shared_facet_area(a, b) > 0.0;
}

struct DyadicCubeHash {
  std::size_t operator()(const DyadicCube& q) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(
                          q.level) + 0x100000001B3ULL * q.scale_exponent);
    for (int i = 0; i < q.dim(); ++i) {
      h ^= static_cast<std::uint64_t>(q.vertex[i]) + 0x9E3779B97F4A7C15ULL +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace cubewalk
