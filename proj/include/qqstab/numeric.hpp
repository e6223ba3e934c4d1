#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "qqstab/errors.hpp"

namespace qqstab {

/// Working precision for domain points and function values.
///
/// The grow-direction limits subtract two terms of size ~16^m |x|^4 to expose
/// a quadratic part of size ~4^m |x|^2. In binary64 a 1e-3 perturbation drops
/// below one ulp of f(2^m x) near m = 12, so the limit cannot be resolved to
/// 1e-10. The 113-bit significand keeps it well past m = 24.
using Real = boost::multiprecision::float128;

inline double to_double(const Real& v) { return v.convert_to<double>(); }

/// Fixed-length coordinate array. The tag keeps points of X and vectors of Y
/// from being mixed up.
template <class Tag>
class CoordVector {
 public:
  CoordVector() = default;
  CoordVector(std::initializer_list<Real> init) : coords_(init) {}
  explicit CoordVector(std::vector<Real> coords) : coords_(std::move(coords)) {}

  static CoordVector zero(std::size_t dim) {
    return CoordVector(std::vector<Real>(dim, Real(0)));
  }

  std::size_t dim() const { return coords_.size(); }
  const Real& operator[](std::size_t i) const { return coords_[i]; }
  Real& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Real>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  bool is_finite() const {
    for (const auto& c : coords_)
      if (!boost::multiprecision::isfinite(c)) return false;
    return true;
  }

  CoordVector& operator+=(const CoordVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  CoordVector& operator-=(const CoordVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  CoordVector& operator*=(const Real& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  CoordVector& operator/=(const Real& s) {
    for (auto& c : coords_) c /= s;
    return *this;
  }

  friend CoordVector operator+(CoordVector a, const CoordVector& b) { return a += b; }
  friend CoordVector operator-(CoordVector a, const CoordVector& b) { return a -= b; }
  friend CoordVector operator-(CoordVector a) { return a *= Real(-1); }
  friend CoordVector operator*(const Real& s, CoordVector v) { return v *= s; }
  friend CoordVector operator*(CoordVector v, const Real& s) { return v *= s; }
  friend CoordVector operator/(CoordVector v, const Real& s) { return v /= s; }
  friend bool operator==(const CoordVector& a, const CoordVector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  void check_same(const CoordVector& o) const {
    if (o.coords_.size() != coords_.size())
      throw InputError("dimension mismatch: " + std::to_string(coords_.size()) +
                       " vs " + std::to_string(o.coords_.size()));
  }

  std::vector<Real> coords_;
};

struct XTag;
struct YTag;

/// A point of the domain X = R^d.
using XPoint = CoordVector<XTag>;
/// An element of the target space Y = R^k.
using YVector = CoordVector<YTag>;

/// Euclidean norm on X; the domain quasi-norm used by control functions.
inline double domain_norm(const XPoint& x) {
  Real s = 0;
  for (const auto& c : x.coords()) s += c * c;
  return to_double(sqrt(s));
}

/// lhs <= rhs up to a pure rounding guard of 1e-12 (1 + |lhs| + |rhs|).
inline bool within_slack(double lhs, double rhs) {
  const double a = lhs < 0 ? -lhs : lhs;
  const double b = rhs < 0 ? -rhs : rhs;
  return lhs <= rhs + 1e-12 * (1.0 + a + b);
}

}  // namespace qqstab
