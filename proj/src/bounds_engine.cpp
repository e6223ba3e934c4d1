#include "qqstab/bounds_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qqstab {

std::string_view to_string(ControlKind k) {
  switch (k) {
    case ControlKind::constant: return "constant";
    case ControlKind::power_x: return "power_x";
    case ControlKind::power_y: return "power_y";
    case ControlKind::power_sum: return "power_sum";
    case ControlKind::power_product: return "power_product";
  }
  return "?";
}

ControlKind parse_control_kind(std::string_view s) {
  for (auto k : {ControlKind::constant, ControlKind::power_x, ControlKind::power_y,
                 ControlKind::power_sum, ControlKind::power_product})
    if (to_string(k) == s) return k;
  throw InputError("unknown control kind '" + std::string(s) +
                   "' (expected constant|power_x|power_y|power_sum|power_product)");
}

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::quadratic: return "quadratic";
    case Flavor::quartic: return "quartic";
    case Flavor::mixed: return "mixed";
  }
  return "?";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "quadratic") return Flavor::quadratic;
  if (s == "quartic") return Flavor::quartic;
  if (s == "mixed") return Flavor::mixed;
  throw InputError("unknown flavor '" + std::string(s) + "' (expected quadratic|quartic|mixed)");
}

void PerturbationSpec::validate() const {
  if (!(theta >= 0) || !std::isfinite(theta)) throw InputError("theta must be finite and >= 0");
  if (!(r >= 0) || !(s >= 0) || !std::isfinite(r) || !std::isfinite(s))
    throw InputError("exponents r, s must be finite and >= 0");
  const bool need_r = kind == ControlKind::power_x || kind == ControlKind::power_sum ||
                      kind == ControlKind::power_product;
  const bool need_s = kind == ControlKind::power_y || kind == ControlKind::power_sum ||
                      kind == ControlKind::power_product;
  if (need_r && !(r > 0)) throw InputError(std::string(to_string(kind)) + " needs r > 0");
  if (need_s && !(s > 0)) throw InputError(std::string(to_string(kind)) + " needs s > 0");
}

std::vector<double> PerturbationSpec::effective_exponents() const {
  switch (kind) {
    case ControlKind::constant: return {0.0};
    case ControlKind::power_x: return {r};
    case ControlKind::power_y: return {s};
    case ControlKind::power_sum: return {r, s};
    case ControlKind::power_product: return {r + s};
  }
  return {};
}

namespace {

double norm_pow(const XPoint& v, double e) {
  const double nv = domain_norm(v);
  return nv == 0.0 ? 0.0 : std::pow(nv, e);
}

}  // namespace

double phi_eval(const PerturbationSpec& spec, const XPoint& x, const XPoint& y) {
  switch (spec.kind) {
    case ControlKind::constant: return spec.theta;
    case ControlKind::power_x: return spec.theta * norm_pow(x, spec.r);
    case ControlKind::power_y: return spec.theta * norm_pow(y, spec.s);
    case ControlKind::power_sum: return spec.theta * (norm_pow(x, spec.r) + norm_pow(y, spec.s));
    case ControlKind::power_product:
      return spec.theta * norm_pow(x, spec.r) * norm_pow(y, spec.s);
  }
  return 0;
}

ControlFn as_control_fn(const PerturbationSpec& spec) {
  spec.validate();
  return [spec](const XPoint& x, const XPoint& y) { return phi_eval(spec, x, y); };
}

std::array<PsiTerm, 17> psi_terms(int n) {
  if (n == 0 || n == 1 || n == -1) throw InputError("psi needs |n| >= 2");
  const double n2 = double(n) * n;
  const double d = n2 * (n2 - 1);
  const double q = n2 / (n2 - 1);
  return {{
      {1, n + 2, 1 / d},
      {1, n - 2, 1 / d},
      {1, n + 1, 4 / d},
      {1, n - 1, 4 / d},
      {1, n, 10 / d},
      {2, 2, 1 / d},
      {2, 1, 4 / d},
      {1, 3, n2 / d},
      {1, 2, 2 * (3 * n2 - 1) / d},
      {1, 1, (17 * n2 - 8) / d},
      {0, n + 1, q / d},
      {0, n - 3, q / d},
      {0, n - 1, 10 * q / d},
      {0, n, 4 * q / d},
      {0, n - 2, 4 * q / d},
      {0, 2, (n2 * n2 + 1) / (n2 - 1) / d},
      {0, 1, 2 * (3 * n2 * n2 - n2 + 2) / (n2 - 1) / d},
  }};
}

double psi_eval(Target, const ControlFn& phi, int n, const XPoint& x) {
  double sum = 0;
  for (const auto& t : psi_terms(n)) sum += t.weight * phi(Real(t.a) * x, Real(t.b) * x);
  return sum;
}

double psi_eval(Target target, const PerturbationSpec& phi, int n, const XPoint& x) {
  return psi_eval(target, as_control_fn(phi), n, x);
}

double psi_p_upper(Target target, const ControlFn& phi, int n, double p, const XPoint& x) {
  if (!(p > 0 && p <= 1)) throw InputError("p must lie in (0, 1]");
  if (p == 1.0) return psi_eval(target, phi, n, x);
  double sum = 0;
  for (const auto& t : psi_terms(n)) {
    const double v = phi(Real(t.a) * x, Real(t.b) * x);
    sum += std::pow(t.weight, p) * std::pow(v, p);
  }
  return sum;
}

double psi_p_upper(Target target, const PerturbationSpec& phi, int n, double p,
                   const XPoint& x) {
  return psi_p_upper(target, as_control_fn(phi), n, p, x);
}

BoundParams BoundParams::from(const EquationParams& eq, const QuasiNormSpec& space) {
  BoundParams b;
  b.n = eq.n();
  b.p = space.p();
  b.M = modulus_of_concavity(space);
  return b;
}

void BoundParams::validate() const {
  if (n == 0 || n == 1 || n == -1) throw InputError("n must not be 0, 1 or -1");
  if (!(p > 0 && p <= 1)) throw InputError("p must lie in (0, 1]");
  if (!(M >= 1) || !std::isfinite(M)) throw InputError("M must be finite and >= 1");
  if (truncation < 8) throw InputError("truncation must be >= 8");
}

double critical_exponent(Target target) { return target == Target::quadratic ? 2.0 : 4.0; }

namespace {

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string regime_condition(Target target, ControlKind kind) {
  const std::string c = fmt_num(critical_exponent(target));
  switch (kind) {
    case ControlKind::constant: return "constant phi converges only in the grow direction";
    case ControlKind::power_x: return "r != " + c;
    case ControlKind::power_y: return "s != " + c;
    case ControlKind::power_sum: return "r, s > " + c + " or 0 <= r, s < " + c;
    case ControlKind::power_product: return "lambda := r + s != " + c;
  }
  return "";
}

}  // namespace

Direction select_direction(Target target, const PerturbationSpec& phi) {
  phi.validate();
  const double c = critical_exponent(target);
  const auto ex = phi.effective_exponents();
  const bool all_below = std::all_of(ex.begin(), ex.end(), [c](double e) { return e < c; });
  const bool all_above = std::all_of(ex.begin(), ex.end(), [c](double e) { return e > c; });
  if (all_below) return Direction::grow;
  if (all_above) return Direction::shrink;
  throw RegimeError(std::string(to_string(target)) + " series for " +
                    std::string(to_string(phi.kind)) + " phi (r = " + fmt_num(phi.r) +
                    ", s = " + fmt_num(phi.s) + ") needs " + regime_condition(target, phi.kind));
}

void check_regime(Target target, Direction direction, const PerturbationSpec& phi) {
  const Direction ok = select_direction(target, phi);
  if (ok == direction) return;
  const std::string c = fmt_num(critical_exponent(target));
  if (phi.kind == ControlKind::constant)
    throw RegimeError(std::string(to_string(target)) +
                      " shrink series diverges for constant phi: " +
                      regime_condition(target, phi.kind));
  throw RegimeError(std::string(to_string(target)) + " " + std::string(to_string(direction)) +
                    " series diverges: it needs every exponent " +
                    (direction == Direction::shrink ? "> " : "< ") + c + " (" +
                    regime_condition(target, phi.kind) + ")");
}

SeriesResult sum_tilde_psi(Target target, Direction direction, const ControlFn& phi,
                           const BoundParams& params, const XPoint& x) {
  params.validate();
  const double c = target == Target::quadratic ? 4.0 : 16.0;
  SeriesResult res;
  res.partial_sums.reserve(params.truncation);
  double sum = 0;
  double prev_term = 0;
  double ratio = 0;
  for (int k = 0; k < params.truncation; ++k) {
    const int i = direction == Direction::shrink ? k + 1 : k;
    const double psi = psi_p_upper(target, phi, params.n, params.p,
                                   ldexp(Real(1), direction == Direction::shrink ? -i : i) * x);
    // psi underflows to 0 long before c^{pi} overflows; keep 0 * inf out of the sum
    double term = 0;
    if (psi != 0)
      term = std::pow(c, direction == Direction::shrink ? params.p * i : -params.p * i) * psi;
    sum += term;
    res.partial_sums.push_back(sum);
    if (k > 0) ratio = prev_term > 0 ? term / prev_term : (term > 0 ? HUGE_VAL : 0.0);
    prev_term = term;
  }
  res.value = sum;
  res.last_term = prev_term;
  if (sum == 0)
    res.accepted = true;
  else
    res.accepted = std::isfinite(sum) && prev_term / sum < 1e-9 && ratio < 1;
  return res;
}

double tilde_psi_truncated(Target target, Direction direction, const ControlFn& phi,
                           const BoundParams& params, const XPoint& x) {
  const SeriesResult r = sum_tilde_psi(target, direction, phi, params, x);
  if (!r.accepted)
    throw RegimeError(std::string(to_string(target)) + " " + std::string(to_string(direction)) +
                      " series failed the tail criterion after " +
                      std::to_string(params.truncation) + " terms (partial sum " +
                      fmt_num(r.value) + ", last term " + fmt_num(r.last_term) + ")");
  return r.value;
}

namespace {

/// c * ||x||^{e p}, a p-power monomial of psi_p_upper.
struct Monomial {
  double coeff;
  double exponent;
};

std::vector<Monomial> psi_p_monomials(const PerturbationSpec& phi, int n, double p) {
  std::vector<Monomial> out;
  auto mult = [](int k, double e) { return std::pow(std::abs(double(k)), e); };
  for (const auto& t : psi_terms(n)) {
    const double w = std::pow(t.weight * phi.theta, p);
    switch (phi.kind) {
      case ControlKind::constant:
        out.push_back({w, 0.0});
        break;
      case ControlKind::power_x:
        if (t.a != 0) out.push_back({w * std::pow(mult(t.a, phi.r), p), phi.r});
        break;
      case ControlKind::power_y:
        if (t.b != 0) out.push_back({w * std::pow(mult(t.b, phi.s), p), phi.s});
        break;
      case ControlKind::power_sum:
        if (t.a != 0) out.push_back({w * std::pow(mult(t.a, phi.r), p), phi.r});
        if (t.b != 0) out.push_back({w * std::pow(mult(t.b, phi.s), p), phi.s});
        break;
      case ControlKind::power_product:
        if (t.a != 0 && t.b != 0)
          out.push_back({w * std::pow(mult(t.a, phi.r) * mult(t.b, phi.s), p), phi.r + phi.s});
        break;
    }
  }
  return out;
}

}  // namespace

double tilde_psi_closed(Target target, Direction direction, const PerturbationSpec& phi,
                        const BoundParams& params, const XPoint& x) {
  params.validate();
  check_regime(target, direction, phi);
  const double log2c = target == Target::quadratic ? 2.0 : 4.0;
  const double p = params.p;
  const double nx = domain_norm(x);
  double sum = 0;
  for (const auto& m : psi_p_monomials(phi, params.n, p)) {
    if (m.coeff == 0) continue;
    const double at_x = m.exponent == 0 ? 1.0 : (nx == 0 ? 0.0 : std::pow(nx, m.exponent * p));
    if (direction == Direction::shrink) {
      const double rho = std::exp2((log2c - m.exponent) * p);
      sum += m.coeff * at_x * rho / (1 - rho);
    } else {
      const double rho = std::exp2((m.exponent - log2c) * p);
      sum += m.coeff * at_x / (1 - rho);
    }
  }
  return sum;
}

double tilde_psi(Target target, Direction direction, const PerturbationSpec& phi,
                 const BoundParams& params, const XPoint& x) {
  return tilde_psi_closed(target, direction, phi, params, x);
}

double tilde_psi(Target target, Direction direction, const ControlFn& phi,
                 const BoundParams& params, const XPoint& x) {
  return tilde_psi_truncated(target, direction, phi, params, x);
}

BoundEvaluation evaluate_theorem_bound(Flavor flavor, std::optional<Direction> direction,
                                       const PerturbationSpec& phi, const BoundParams& params,
                                       const XPoint& x, SeriesMode mode) {
  params.validate();
  phi.validate();
  auto part = [&](Target t) {
    const Direction d = direction ? *direction : select_direction(t, phi);
    check_regime(t, d, phi);
    const double v = mode == SeriesMode::closed_form
                         ? tilde_psi_closed(t, d, phi, params, x)
                         : tilde_psi_truncated(t, d, as_control_fn(phi), params, x);
    return std::pair{d, v};
  };
  const double inv_p = 1.0 / params.p;
  BoundEvaluation out;
  if (flavor != Flavor::quartic) {
    auto [d, v] = part(Target::quadratic);
    out.direction_q = d;
    out.tilde_psi_q = v;
  }
  if (flavor != Flavor::quadratic) {
    auto [d, v] = part(Target::quartic);
    out.direction_t = d;
    out.tilde_psi_t = v;
  }
  const double mq = std::pow(params.M, params.m_exponent_q);
  const double mt = std::pow(params.M, params.m_exponent_t);
  switch (flavor) {
    case Flavor::quadratic:
      out.value = mq / 4 * std::pow(*out.tilde_psi_q, inv_p);
      break;
    case Flavor::quartic:
      out.value = mt / 16 * std::pow(*out.tilde_psi_t, inv_p);
      break;
    case Flavor::mixed:
      out.value = params.M / 192 *
                  (4 * mq * std::pow(*out.tilde_psi_q, inv_p) +
                   mt * std::pow(*out.tilde_psi_t, inv_p));
      break;
  }
  return out;
}

double theorem_bound(Flavor flavor, std::optional<Direction> direction,
                     const PerturbationSpec& phi, const BoundParams& params, const XPoint& x,
                     SeriesMode mode) {
  return evaluate_theorem_bound(flavor, direction, phi, params, x, mode).value;
}

}  // namespace qqstab
