#include <algorithm>
#include <cmath>

#include "qqstab/bounds_engine.hpp"
#include "qqstab/grid.hpp"

namespace qqstab {

namespace {

double safe_ratio(double num, double den) {
  if (den > 0) return num / den;
  return num == 0 ? 0.0 : HUGE_VAL;
}

ApproximantResult run_converged(const SampleFn& f, IterationConfig cfg, Target target,
                                Direction dir, const XPoint& x) {
  cfg.target = target;
  cfg.direction = dir;
  ApproximantResult r;
  try {
    r = approximant(f, cfg, x);
  } catch (const DivergenceError& e) {
    throw RegimeError(std::string("approximant diverged: ") + e.what());
  }
  if (!r.converged)
    throw RegimeError(std::string(to_string(target)) + " " + std::string(to_string(dir)) +
                      " approximant did not converge within m_max = " +
                      std::to_string(cfg.m_max));
  return r;
}

}  // namespace

CertificationReport certify(const SampleFn& f, const PerturbationSpec& phi, Flavor flavor,
                            const BoundParams& params, const std::vector<XPoint>& grid,
                            const CertifyOptions& options) {
  params.validate();
  phi.validate();
  options.iteration.validate();
  if (grid.empty()) throw InputError("certify needs a non-empty grid");
  const EquationParams eq(params.n);
  const QuasiNormSpec& space = f.target();

  CertificationReport rep;
  rep.flavor = flavor;
  rep.phi = phi;
  rep.exponent_q = params.m_exponent_q;
  rep.exponent_t = params.m_exponent_t;
  rep.alt_exponent = options.alt_exponent;

  // Regime first: a structural property of phi, independent of f.
  if (flavor != Flavor::quartic) {
    rep.direction_q = options.direction ? *options.direction
                                        : select_direction(Target::quadratic, phi);
    check_regime(Target::quadratic, *rep.direction_q, phi);
  }
  if (flavor != Flavor::quadratic) {
    rep.direction_t = options.direction ? *options.direction
                                        : select_direction(Target::quartic, phi);
    check_regime(Target::quartic, *rep.direction_t, phi);
  }

  rep.premise_ok = true;
  for (const auto& x : grid) {
    for (const auto& y : grid) {
      ++rep.premise_pairs;
      const double lhs = to_double(pnorm(space, delta_f(f, eq, x, y)));
      const double bound = phi_eval(phi, x, y);
      const double ratio = safe_ratio(lhs, bound);
      if (!within_slack(lhs, bound)) rep.premise_ok = false;
      if (!rep.worst_premise_pair || ratio > rep.worst_premise_ratio) {
        rep.worst_premise_ratio = ratio;
        rep.worst_premise_pair = std::pair{x, y};
      }
    }
  }
  if (!rep.premise_ok) return rep;

  BoundParams alt = params;
  alt.m_exponent_q = options.alt_exponent;
  alt.m_exponent_t = options.alt_exponent;
  const std::optional<Direction> dir_q = rep.direction_q;
  const std::optional<Direction> dir_t = rep.direction_t;

  rep.bound_evaluated = true;
  rep.bound_ok = true;
  rep.alt_bound_ok = true;
  for (const auto& x : grid) {
    PointCertificate pc;
    pc.x = x;
    double lhs = 0;
    switch (flavor) {
      case Flavor::quadratic: {
        const auto r = run_converged(f, options.iteration, Target::quadratic, *dir_q, x);
        pc.m_used_q = r.m_used;
        lhs = to_double(pnorm(space, r.base - r.value));
        break;
      }
      case Flavor::quartic: {
        const auto r = run_converged(f, options.iteration, Target::quartic, *dir_t, x);
        pc.m_used_t = r.m_used;
        lhs = to_double(pnorm(space, r.base - r.value));
        break;
      }
      case Flavor::mixed: {
        const auto q = run_converged(f, options.iteration, Target::quadratic, *dir_q, x);
        const auto t = run_converged(f, options.iteration, Target::quartic, *dir_t, x);
        pc.m_used_q = q.m_used;
        pc.m_used_t = t.m_used;
        const YVector Q = -q.value / Real(12);
        const YVector T = t.value / Real(12);
        lhs = to_double(pnorm(space, f(x) - Q - T));
        break;
      }
    }
    auto bound_at = [&](const BoundParams& bp) {
      return theorem_bound(flavor, options.direction, phi, bp, x, options.mode);
    };
    pc.lhs = lhs;
    pc.rhs = bound_at(params);
    pc.rhs_alt = bound_at(alt);
    pc.ratio = safe_ratio(lhs, pc.rhs);
    pc.ratio_alt = safe_ratio(lhs, pc.rhs_alt);
    if (!within_slack(lhs, pc.rhs)) rep.bound_ok = false;
    if (!within_slack(lhs, pc.rhs_alt)) rep.alt_bound_ok = false;
    rep.worst_bound_ratio = std::max(rep.worst_bound_ratio, pc.ratio);
    rep.alt_worst_bound_ratio = std::max(rep.alt_worst_bound_ratio, pc.ratio_alt);
    rep.details.push_back(std::move(pc));
  }
  return rep;
}

}  // namespace qqstab
