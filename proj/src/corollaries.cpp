#include <cmath>

#include "qqstab/bounds_engine.hpp"

namespace qqstab {

std::string_view to_string(CorollaryWhich w) {
  switch (w) {
    case CorollaryWhich::delta_q: return "delta_q";
    case CorollaryWhich::alpha_q: return "alpha_q";
    case CorollaryWhich::beta_q: return "beta_q";
    case CorollaryWhich::sum_q: return "sum_q";
    case CorollaryWhich::product_q: return "product_q";
    case CorollaryWhich::delta_t: return "delta_t";
    case CorollaryWhich::alpha_t: return "alpha_t";
    case CorollaryWhich::beta_t: return "beta_t";
    case CorollaryWhich::sum_t: return "sum_t";
    case CorollaryWhich::product_t: return "product_t";
    case CorollaryWhich::mixed_sum: return "mixed_sum";
    case CorollaryWhich::mixed_product: return "mixed_product";
  }
  return "?";
}

CorollaryWhich parse_corollary_which(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(CorollaryWhich::mixed_product); ++i) {
    const auto w = static_cast<CorollaryWhich>(i);
    if (to_string(w) == s) return w;
  }
  throw InputError("unknown corollary '" + std::string(s) + "'");
}

std::string_view to_string(CorollaryReading r) {
  switch (r) {
    case CorollaryReading::completed: return "completed";
    case CorollaryReading::printed: return "printed";
    case CorollaryReading::printed_alt: return "printed_alt";
  }
  return "?";
}

namespace {

// Brackets of the closed forms. Integer multiples of x enter through their
// absolute value, so (n - 3)^{sp} is read as |n - 3|^{sp}.
struct Brackets {
  double n, p;
  double n2, N1;

  Brackets(int n_, double p_) : n(n_), p(p_), n2(double(n_) * n_), N1(std::pow(n2 - 1, p_)) {}

  double P(double v) const { return std::pow(v, p); }
  double A(double k, double e) const {
    const double v = std::abs(k);
    return v == 0 ? 0.0 : std::pow(v, e * p);
  }

  double delta() const {
    return P(6 * n2 - 2) * N1 + P(17 * n2 - 8) * N1 + P(6 * n2 * n2 - 2 * n2 + 4) +
           P(n2) * (2 + P(10) + 2 * P(4)) + P(n2 * n2 + 1) + P(n2) * N1 + 3 * P(4) * N1 +
           P(10) * N1 + 3 * N1;
  }

  double alpha(double r, bool printed) const {
    const double two_r = A(2, r);
    double v = P(4) * (2 + two_r) + P(10) + P(6 * n2 - 2) + P(17 * n2 - 8) + two_r + P(n2);
    if (!printed) v += 2;  // phi(x,(n+2)x) and phi(x,(n-2)x)
    return v;
  }

  double beta_q(double s, bool printed) const {
    double v = A(2, s) * P(6 * n2 - 2) * N1 + P(17 * n2 - 8) * N1 +
               P(6 * n2 * n2 - 2 * n2 + 4) +
               P(n2) * (A(n + 1, s) + A(n - 3, s) + P(10) * A(n - 1, s) + P(4) * A(n, s) +
                        P(4) * A(n - 2, s)) +
               A(2, s) * P(n2 * n2 + 1) + A(3, s) * P(n2) * N1 + P(4) * N1 +
               A(n + 2, s) * N1 + A(n - 2, s) * N1 + P(4) * A(n + 1, s) * N1 +
               P(4) * A(n - 1, s) * N1 + P(10) * A(n, s) * N1;
    if (!printed) v += A(2, s) * N1;  // phi(2x,2x)
    return v;
  }

  double beta_t_printed(double s) const {
    return A(2, s) * P(6 * n2 - 2) * N1 + P(17 * n2 - 8) * N1 + P(6 * n2 * n2 - 2 * n2 + 4) +
           P(n2) * (A(n + 1, s) + A(n - 3, s) + P(10) * A(n - 1, s)) + P(10) * A(n, s) +
           P(4) * A(n - 2, s) + A(2, s) * P(n2 * n2 + 1) + A(3, s) * P(n2) * N1 + P(4) * N1 +
           A(n + 2, s) * N1 + A(n - 2, s) * N1 + P(4) * A(n + 1, s) * N1 +
           P(4) * A(n - 1, s) * N1 + P(4) * A(n, s) * N1;
  }

  double product(double r, double s) const {
    return A(n + 2, s) + A(n - 2, s) + P(4) * A(n + 1, s) + P(4) * A(n - 1, s) +
           P(10) * A(n, s) + A(2, r + s) + P(4) * A(2, r) + P(n2) * A(3, s) +
           A(2, s) * P(6 * n2 - 2) + P(17 * n2 - 8);
  }
};

double denom(double c, double e, double p) {
  const double d = std::abs(std::pow(c, p) - std::exp2(e * p));
  return d;
}

double xpow(const XPoint& x, double e) {
  const double nx = domain_norm(x);
  if (e == 0) return 1.0;
  return nx == 0 ? 0.0 : std::pow(nx, e);
}

void require_kind(CorollaryWhich which, const PerturbationSpec& phi,
                  std::initializer_list<ControlKind> kinds) {
  for (auto k : kinds)
    if (phi.kind == k) return;
  throw InputError(std::string(to_string(which)) + " does not apply to " +
                   std::string(to_string(phi.kind)) + " phi");
}

void require_noncritical(double e, double crit, const char* name) {
  if (e == crit)
    throw RegimeError(std::string("critical exponent: need ") + name + " != " +
                      std::to_string(static_cast<int>(crit)));
}

/// Single-flavor piece without the prefactor, at x.
double piece(Target target, ControlKind shape, const BoundParams& bp, const PerturbationSpec& phi,
             const XPoint& x, CorollaryReading reading) {
  const Brackets b(bp.n, bp.p);
  const double c = target == Target::quadratic ? 4.0 : 16.0;
  const double crit = critical_exponent(target);
  const double p = bp.p;
  const double inv = 1.0 / p;
  const bool printed = reading != CorollaryReading::completed;

  auto alpha_p = [&] {
    require_noncritical(phi.r, crit, "r");
    return b.alpha(phi.r, printed) / denom(c, phi.r, p) * std::pow(xpow(x, phi.r), p);
  };
  auto beta_p = [&] {
    require_noncritical(phi.s, crit, "s");
    double br;
    if (target == Target::quartic && reading == CorollaryReading::printed)
      br = b.beta_t_printed(phi.s);
    else
      br = b.beta_q(phi.s, printed);
    return br / (b.N1 * denom(c, phi.s, p)) * std::pow(xpow(x, phi.s), p);
  };

  switch (shape) {
    case ControlKind::constant:
      return std::pow(b.delta() / ((std::pow(c, p) - 1) * b.N1), inv);
    case ControlKind::power_x:
      return std::pow(alpha_p(), inv);
    case ControlKind::power_y:
      return std::pow(beta_p(), inv);
    case ControlKind::power_sum:
      select_direction(target, phi);
      return std::pow(alpha_p() + beta_p(), inv);
    case ControlKind::power_product: {
      const double lambda = phi.r + phi.s;
      require_noncritical(lambda, crit, "lambda := r + s");
      return std::pow(b.product(phi.r, phi.s) / denom(c, lambda, p), inv) * xpow(x, lambda);
    }
  }
  return 0;
}

}  // namespace

CorollaryWhich corollary_for(Flavor flavor, ControlKind kind) {
  if (flavor == Flavor::mixed)
    return kind == ControlKind::power_product ? CorollaryWhich::mixed_product
                                              : CorollaryWhich::mixed_sum;
  const bool q = flavor == Flavor::quadratic;
  switch (kind) {
    case ControlKind::constant: return q ? CorollaryWhich::delta_q : CorollaryWhich::delta_t;
    case ControlKind::power_x: return q ? CorollaryWhich::alpha_q : CorollaryWhich::alpha_t;
    case ControlKind::power_y: return q ? CorollaryWhich::beta_q : CorollaryWhich::beta_t;
    case ControlKind::power_sum: return q ? CorollaryWhich::sum_q : CorollaryWhich::sum_t;
    case ControlKind::power_product:
      return q ? CorollaryWhich::product_q : CorollaryWhich::product_t;
  }
  return CorollaryWhich::delta_q;
}

double corollary_constant(CorollaryWhich which, const BoundParams& params,
                          const PerturbationSpec& phi, const XPoint& x,
                          CorollaryReading reading) {
  params.validate();
  phi.validate();
  const double n2 = double(params.n) * params.n;
  const double base = phi.theta / (n2 * (n2 - 1));
  const double kq = std::pow(params.M, params.m_exponent_q) * base;
  const double kt = std::pow(params.M, params.m_exponent_t) * base;

  using CK = ControlKind;
  using W = CorollaryWhich;
  switch (which) {
    case W::delta_q:
    case W::delta_t:
      require_kind(which, phi, {CK::constant});
      break;
    case W::alpha_q:
    case W::alpha_t:
      require_kind(which, phi, {CK::power_x, CK::power_sum});
      break;
    case W::beta_q:
    case W::beta_t:
      require_kind(which, phi, {CK::power_y, CK::power_sum});
      break;
    case W::sum_q:
    case W::sum_t:
      require_kind(which, phi, {CK::power_sum});
      break;
    case W::product_q:
    case W::product_t:
    case W::mixed_product:
      require_kind(which, phi, {CK::power_product});
      break;
    case W::mixed_sum:
      require_kind(which, phi, {CK::constant, CK::power_x, CK::power_y, CK::power_sum});
      break;
  }

  switch (which) {
    case W::delta_q: return kq * piece(Target::quadratic, CK::constant, params, phi, x, reading);
    case W::alpha_q: return kq * piece(Target::quadratic, CK::power_x, params, phi, x, reading);
    case W::beta_q: return kq * piece(Target::quadratic, CK::power_y, params, phi, x, reading);
    case W::sum_q: return kq * piece(Target::quadratic, CK::power_sum, params, phi, x, reading);
    case W::product_q:
      return kq * piece(Target::quadratic, CK::power_product, params, phi, x, reading);
    case W::delta_t: return kt * piece(Target::quartic, CK::constant, params, phi, x, reading);
    case W::alpha_t: return kt * piece(Target::quartic, CK::power_x, params, phi, x, reading);
    case W::beta_t: return kt * piece(Target::quartic, CK::power_y, params, phi, x, reading);
    case W::sum_t: return kt * piece(Target::quartic, CK::power_sum, params, phi, x, reading);
    case W::product_t:
      return kt * piece(Target::quartic, CK::power_product, params, phi, x, reading);
    case W::mixed_sum: {
      select_direction(Target::quadratic, phi);
      select_direction(Target::quartic, phi);
      return params.M / 12 *
             (kq * piece(Target::quadratic, phi.kind, params, phi, x, reading) +
              kt * piece(Target::quartic, phi.kind, params, phi, x, reading));
    }
    case W::mixed_product: {
      const double lambda = phi.r + phi.s;
      require_noncritical(lambda, 2, "lambda := r + s");
      require_noncritical(lambda, 4, "lambda := r + s");
      const double q = kq * piece(Target::quadratic, CK::power_product, params, phi, x, reading);
      if (reading != CorollaryReading::completed) return params.M / 12 * q;
      return params.M / 12 *
             (q + kt * piece(Target::quartic, CK::power_product, params, phi, x, reading));
    }
  }
  return 0;
}

}  // namespace qqstab
