#include "qqstab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qqstab {

std::vector<XPoint> make_grid(const GridSpec& spec) {
  if (spec.count == 0) throw InputError("grid needs count >= 1");
  if (spec.domain_dim == 0) throw InputError("grid needs domain_dim >= 1");
  if (!(spec.lo <= spec.hi)) throw InputError("grid needs lo <= hi");
  if (spec.dyadic_bits && *spec.dyadic_bits < 0) throw InputError("dyadic_bits must be >= 0");

  std::vector<double> axis;
  axis.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    double v = spec.count == 1
                   ? spec.lo
                   : spec.lo + (spec.hi - spec.lo) * static_cast<double>(k) /
                                   static_cast<double>(spec.count - 1);
    if (spec.dyadic_bits) {
      const double scale = std::ldexp(1.0, *spec.dyadic_bits);
      v = std::round(v * scale) / scale;
    }
    axis.push_back(v == 0.0 ? 0.0 : v);  // fold -0
  }
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());

  std::vector<XPoint> points;
  std::vector<std::size_t> idx(spec.domain_dim, 0);
  while (true) {
    XPoint p = XPoint::zero(spec.domain_dim);
    for (std::size_t i = 0; i < spec.domain_dim; ++i) p[i] = axis[idx[i]];
    points.push_back(std::move(p));
    std::size_t i = spec.domain_dim;
    while (i > 0) {
      --i;
      if (++idx[i] < axis.size()) break;
      idx[i] = 0;
      if (i == 0) return points;
    }
  }
}

std::vector<std::pair<XPoint, XPoint>> grid_pairs(const std::vector<XPoint>& points) {
  std::vector<std::pair<XPoint, XPoint>> pairs;
  pairs.reserve(points.size() * points.size());
  for (const auto& x : points)
    for (const auto& y : points) pairs.emplace_back(x, y);
  return pairs;
}

bool is_dyadic(const XPoint& x, int bits) {
  for (const auto& c : x.coords()) {
    const Real scaled = ldexp(c, bits);
    if (scaled != trunc(scaled)) return false;
  }
  return true;
}

}  // namespace qqstab
