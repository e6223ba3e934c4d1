#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qqstab/bounds_engine.hpp"
#include "qqstab/feq_core.hpp"

namespace qqstab {

enum class NoiseShape {
  /// e(x) = eps * sin(2 pi u(x)) with u(x) a hash of x and the seed.
  bounded_oscillation,
  /// e(x) = eps * ||x||^r * sin(2 pi u(x)).
  scaled_power,
};

std::string_view to_string(NoiseShape s);
NoiseShape parse_noise_shape(std::string_view s);

struct NoiseSpec {
  double amplitude = 0;
  NoiseShape shape = NoiseShape::bounded_oscillation;
  std::uint64_t seed = 0;
  /// Exponent of scaled_power; ignored otherwise.
  double r = 0;

  void validate() const;
};

/// Pairs (x, y) at which the phi shape vanishes but Delta f does not.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string message, std::vector<std::pair<XPoint, XPoint>> pairs)
      : Error(std::move(message)), pairs_(std::move(pairs)) {}
  const std::vector<std::pair<XPoint, XPoint>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<XPoint, XPoint>> pairs_;
};

/// a x^4 + b x^2 on X = R.
SampleFn make_exact(double a, double b, const QuasiNormSpec& target = QuasiNormSpec(1, 1.0));

/// The noise alone. Every coordinate is scaled by k^(-1/p), so the p-norm of
/// e(x) never exceeds eps (times ||x||^r for scaled_power); e(0) = 0.
SampleFn noise_fn(const NoiseSpec& noise, std::size_t domain_dim, const QuasiNormSpec& target);

/// x -> base(x) + e(x).
SampleFn make_perturbed(const SampleFn& base, const NoiseSpec& noise);

/// max over pairs of ||Delta f(x,y)|| / shape(x,y), with shape the phi of
/// `kind` at theta = 1. Throws InfeasibleError listing the pairs where the
/// shape is 0 and Delta f is not.
double empirical_theta(const SampleFn& f, const EquationParams& params, ControlKind kind,
                       double r, double s, const std::vector<std::pair<XPoint, XPoint>>& pairs);

}  // namespace qqstab
