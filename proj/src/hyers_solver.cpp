#include "qqstab/hyers_solver.hpp"

#include <cmath>

namespace qqstab {

std::string_view to_string(Direction d) { return d == Direction::shrink ? "shrink" : "grow"; }
std::string_view to_string(Target t) { return t == Target::quadratic ? "quadratic" : "quartic"; }

Direction parse_direction(std::string_view s) {
  if (s == "shrink") return Direction::shrink;
  if (s == "grow") return Direction::grow;
  throw InputError("unknown direction '" + std::string(s) + "' (expected shrink|grow)");
}

Target parse_target(std::string_view s) {
  if (s == "quadratic") return Target::quadratic;
  if (s == "quartic") return Target::quartic;
  throw InputError("unknown target '" + std::string(s) + "' (expected quadratic|quartic)");
}

void IterationConfig::validate() const {
  if (m_max < 2) throw InputError("iteration m_max must be >= 2");
  if (!(tol > 0)) throw InputError("iteration tol must be > 0");
}

ApproximantResult approximant(const SampleFn& f, const IterationConfig& cfg, const XPoint& x) {
  cfg.validate();
  const QuasiNormSpec& space = f.target();
  // Bracket f(2u) - k f(u) at u = x/2^m (shrink) or 2^m x (grow), then scale
  // by c^m resp. c^-m with c = 4 (quadratic) or 16 (quartic).
  const Real k = cfg.target == Target::quadratic ? 16 : 4;
  const int log2c = cfg.target == Target::quadratic ? 2 : 4;
  const int sign = cfg.direction == Direction::shrink ? 1 : -1;

  auto bracket = [&](const XPoint& u) { return f(Real(2) * u) - k * f(u); };

  ApproximantResult res;
  res.point = x;
  res.base = bracket(x);
  res.value = res.base;
  const auto fail = [&](int m) {
    throw DivergenceError("non-finite iterate at m = " + std::to_string(m) + " (" +
                              std::string(to_string(cfg.target)) + ", " +
                              std::string(to_string(cfg.direction)) + ")",
                          std::string(to_string(cfg.target)), res);
  };
  if (!res.base.is_finite()) fail(0);

  YVector prev = res.base;
  for (int m = 1; m <= cfg.m_max; ++m) {
    const XPoint u = ldexp(Real(1), sign == 1 ? -m : m) * x;
    YVector it = bracket(u) * ldexp(Real(1), sign * log2c * m);
    res.m_used = m;
    res.trace.push_back(it);
    res.value = it;
    if (!it.is_finite()) {
      res.tails.push_back(HUGE_VAL);
      res.tail = HUGE_VAL;
      fail(m);
    }
    const double tail = to_double(pnorm(space, it - prev));
    res.tails.push_back(tail);
    res.tail = tail;
    prev = std::move(it);
    if (tail <= cfg.tol) {
      res.converged = true;
      if (cfg.early_stop) break;
    } else {
      res.converged = false;
    }
  }

  if (res.tails.size() >= 2) {
    const double a = res.tails[res.tails.size() - 2];
    const double b = res.tails.back();
    if (a > 0 && b > 0 && b < a) res.tail_estimate = b / (1.0 - b / a);
  }
  return res;
}

double homogeneity_check(const QuasiNormSpec& space, const ApproximantResult& at_x,
                         const ApproximantResult& at_2x, Target target) {
  if (!at_x.converged || !at_2x.converged)
    throw PreconditionError("homogeneity_check needs converged approximants");
  if (!(Real(2) * at_x.point == at_2x.point))
    throw PreconditionError("homogeneity_check needs results at x and 2x");
  const Real c = target == Target::quadratic ? 4 : 16;
  return to_double(pnorm(space, at_2x.value - c * at_x.value));
}

MixedDecomposition mixed_decomposition(const SampleFn& f, IterationConfig cfg_q,
                                       IterationConfig cfg_t, const XPoint& x) {
  cfg_q.target = Target::quadratic;
  cfg_t.target = Target::quartic;
  auto run = [&](const IterationConfig& cfg, const char* name) {
    ApproximantResult r = approximant(f, cfg, x);
    if (!r.converged)
      throw DivergenceError(std::string(name) + " component did not converge within m_max = " +
                                std::to_string(cfg.m_max) + " (" +
                                std::string(to_string(cfg.direction)) + ")",
                            name, r);
    return r;
  };
  MixedDecomposition out;
  out.q0 = run(cfg_q, "quadratic");
  out.t0 = run(cfg_t, "quartic");
  out.quadratic = -out.q0.value / Real(12);
  out.quartic = out.t0.value / Real(12);
  return out;
}

}  // namespace qqstab
