#include "qqstab/pnorm_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qqstab {

QuasiNormSpec::QuasiNormSpec(std::size_t dim, double p, QuasiNormKind kind)
    : dim_(dim), p_(p), kind_(kind) {
  if (dim == 0) throw InputError("quasi-norm space needs dim >= 1");
  if (!(p > 0.0 && p <= 1.0))
    throw InputError("p-norm exponent must lie in (0, 1], got " + std::to_string(p));
}

Real pnorm(const QuasiNormSpec& spec, const YVector& v) {
  if (v.dim() != spec.dim())
    throw InputError("vector of dimension " + std::to_string(v.dim()) +
                     " in a space of dimension " + std::to_string(spec.dim()));
  if (spec.p() == 1.0) {
    Real s = 0;
    for (const auto& c : v.coords()) s += abs(c);
    return s;
  }
  // Scale by the largest entry so |v_i|^p cannot underflow for tiny vectors.
  Real big = 0;
  for (const auto& c : v.coords()) big = std::max(big, Real(abs(c)));
  if (big == 0) return 0;
  const Real p = spec.p();
  Real s = 0;
  for (const auto& c : v.coords()) s += pow(abs(c) / big, p);
  return big * pow(s, Real(1) / p);
}

double modulus_of_concavity(const QuasiNormSpec& spec) {
  return std::pow(2.0, 1.0 / spec.p() - 1.0);
}

ModulusEstimate estimate_modulus(const QuasiNormSpec& spec, std::size_t samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const std::size_t d = spec.dim();

  auto ratio = [&](const YVector& v, const YVector& w) {
    const Real denom = pnorm(spec, v) + pnorm(spec, w);
    if (denom == 0) return 0.0;
    return to_double(pnorm(spec, v + w) / denom);
  };

  ModulusEstimate est;
  est.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    YVector v = YVector::zero(d);
    YVector w = YVector::zero(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = coord(rng);
      w[i] = coord(rng);
    }
    est.max_ratio = std::max(est.max_ratio, ratio(v, w));
  }

  YVector e1 = YVector::zero(d);
  e1[0] = 1;
  YVector e2 = YVector::zero(d);
  e2[d > 1 ? 1 : 0] = 1;
  est.diagonal_ratio = ratio(e1, e2);
  est.max_ratio = std::max(est.max_ratio, est.diagonal_ratio);
  return est;
}

bool power_sum_check(std::span<const double> xs, double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw InputError("power_sum_check: p must lie in (0, 1], got " + std::to_string(p));
  double sum = 0;
  double sum_pow = 0;
  for (double x : xs) {
    if (!(x >= 0.0)) throw InputError("power_sum_check: entries must be non-negative");
    sum += x;
    sum_pow += std::pow(x, p);
  }
  return within_slack(std::pow(sum, p), sum_pow);
}

}  // namespace qqstab
