#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "qqstab/numeric.hpp"

namespace qqstab {

enum class QuasiNormKind {
  /// ||v|| = (sum |v_i|^p)^(1/p), a p-norm for 0 < p <= 1.
  ell_p_pnorm,
};

/// Finite-dimensional l^p target space, 0 < p <= 1.
class QuasiNormSpec {
 public:
  QuasiNormSpec(std::size_t dim, double p, QuasiNormKind kind = QuasiNormKind::ell_p_pnorm);

  std::size_t dim() const { return dim_; }
  double p() const { return p_; }
  QuasiNormKind kind() const { return kind_; }

  friend bool operator==(const QuasiNormSpec&, const QuasiNormSpec&) = default;

 private:
  std::size_t dim_;
  double p_;
  QuasiNormKind kind_;
};

/// (sum |v_i|^p)^(1/p). Throws InputError on dimension mismatch.
Real pnorm(const QuasiNormSpec& spec, const YVector& v);

/// The modulus of concavity 2^(1/p - 1) of the l^p quasi-norm.
///
/// Exact for dim >= 2. On a one-dimensional space the quasi-norm is |v| and
/// the true modulus is 1; the returned value is still a valid (looser)
/// constant for the quasi-triangle inequality.
double modulus_of_concavity(const QuasiNormSpec& spec);

struct ModulusEstimate {
  /// max ||v+w|| / (||v|| + ||w||) over all sampled pairs.
  double max_ratio = 0;
  /// the ratio at v = e_1, w = e_2, whose sum lies on the diagonal; this is
  /// where l^p attains its modulus. Equals 1 when dim == 1.
  double diagonal_ratio = 0;
  std::size_t samples = 0;
};

/// Brute-force estimate of the modulus from `samples` random pairs with
/// coordinates in [-1, 1] plus the diagonal pair.
ModulusEstimate estimate_modulus(const QuasiNormSpec& spec, std::size_t samples = 10000,
                                 std::uint64_t seed = 0x5eed);

/// (sum xs)^p <= sum xs^p, up to rounding slack. Always true for valid input;
/// throws InputError on negative entries or p outside (0, 1].
bool power_sum_check(std::span<const double> xs, double p);

}  // namespace qqstab
