#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qqstab/numeric.hpp"

namespace qqstab {

/// Tensor-product grid on [lo, hi]^d.
///
/// With `dyadic_bits` set, every coordinate is snapped to the nearest
/// multiple of 2^-dyadic_bits so that x / 2^m stays exact and the points are
/// exactly the rationals a user reads in the report.
struct GridSpec {
  double lo = -2.0;
  double hi = 2.0;
  std::size_t count = 21;
  std::optional<int> dyadic_bits = 4;
  std::size_t domain_dim = 1;
};

/// Sorted, de-duplicated points. Throws InputError on count == 0, lo > hi,
/// or a negative dyadic_bits.
std::vector<XPoint> make_grid(const GridSpec& spec);

/// All ordered pairs (x, y) of grid points.
std::vector<std::pair<XPoint, XPoint>> grid_pairs(const std::vector<XPoint>& points);

/// True when every coordinate is a multiple of 2^-bits.
bool is_dyadic(const XPoint& x, int bits);

}  // namespace qqstab
