#include "qqstab/perturbation_lab.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

namespace qqstab {

std::string_view to_string(NoiseShape s) {
  return s == NoiseShape::bounded_oscillation ? "bounded_oscillation" : "scaled_power";
}

NoiseShape parse_noise_shape(std::string_view s) {
  if (s == "bounded_oscillation") return NoiseShape::bounded_oscillation;
  if (s == "scaled_power") return NoiseShape::scaled_power;
  throw InputError("unknown noise shape '" + std::string(s) +
                   "' (expected bounded_oscillation|scaled_power)");
}

void NoiseSpec::validate() const {
  if (!(amplitude >= 0) || !std::isfinite(amplitude))
    throw InputError("noise amplitude must be finite and >= 0");
  if (shape == NoiseShape::scaled_power && !(r >= 0 && std::isfinite(r)))
    throw InputError("scaled_power noise needs a finite r >= 0");
}

SampleFn make_exact(double a, double b, const QuasiNormSpec& target) {
  return to_sample_fn(PolySolution{Real(a), Real(b)}, target);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_point(const XPoint& x, std::uint64_t seed) {
  std::uint64_t h = splitmix64(seed);
  for (const auto& c : x.coords()) {
    __float128 v = c.backend().value();
    if (v == 0) v = 0;  // -0 and +0 hash alike
    std::uint64_t w[2];
    std::memcpy(w, &v, sizeof w);
    h = splitmix64(h ^ w[0]);
    h = splitmix64(h ^ w[1]);
  }
  return h;
}

}  // namespace

SampleFn noise_fn(const NoiseSpec& noise, std::size_t domain_dim, const QuasiNormSpec& target) {
  noise.validate();
  const std::size_t k = target.dim();
  const double scale = std::pow(double(k), -1.0 / target.p());
  auto eval = [noise, k, scale](const XPoint& x) {
    YVector out = YVector::zero(k);
    if (x.is_zero() || noise.amplitude == 0) return out;
    double amp = noise.amplitude * scale;
    if (noise.shape == NoiseShape::scaled_power) amp *= std::pow(domain_norm(x), noise.r);
    const std::uint64_t h = hash_point(x, noise.seed);
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t hi = splitmix64(h + i);
      const double u = double(hi >> 11) * 0x1.0p-53;
      out[i] = amp * std::sin(2 * std::numbers::pi * u);
    }
    return out;
  };
  return SampleFn(domain_dim, target, eval,
                  std::string("noise(") + std::string(to_string(noise.shape)) + ")");
}

SampleFn make_perturbed(const SampleFn& base, const NoiseSpec& noise) {
  const SampleFn e = noise_fn(noise, base.domain_dim(), base.target());
  auto eval = [base, e](const XPoint& x) { return base(x) + e(x); };
  return SampleFn(base.domain_dim(), base.target(), eval, base.label() + "+" + e.label());
}

double empirical_theta(const SampleFn& f, const EquationParams& params, ControlKind kind,
                       double r, double s,
                       const std::vector<std::pair<XPoint, XPoint>>& pairs) {
  PerturbationSpec shape{kind, 1.0, r, s};
  shape.validate();
  double theta = 0;
  std::vector<std::pair<XPoint, XPoint>> bad;
  for (const auto& [x, y] : pairs) {
    const double res = to_double(pnorm(f.target(), delta_f(f, params, x, y)));
    const double sh = phi_eval(shape, x, y);
    if (sh > 0) {
      theta = std::max(theta, res / sh);
    } else if (!within_slack(res, 0.0)) {
      bad.emplace_back(x, y);
    }
  }
  if (!bad.empty())
    throw InfeasibleError(std::to_string(bad.size()) + " grid pair(s) where the " +
                          std::string(to_string(kind)) +
                          " shape vanishes but the residual does not",
                          std::move(bad));
  // Round up so theta * shape never falls an ulp below the residual.
  return theta == 0 ? 0.0 : std::nextafter(theta, HUGE_VAL);
}

}  // namespace qqstab
