#include "qqstab/cli/commands.hpp"

#include <algorithm>
#include <cmath>

namespace qqstab::cli {

namespace {

struct Context {
  const RunConfig& cfg;
  SampleFn f;
  QuasiNormSpec space;
  EquationParams eq;
  std::vector<XPoint> grid;

  explicit Context(const RunConfig& c)
      : cfg(c), f(build_function(c)), space(target_space(c)), eq(c.n), grid(make_grid(c.grid)) {}
};

Json header(const Context& ctx, std::string_view command) {
  Json j;
  j["command"] = command;
  j["status"] = "pass";
  j["function"] = ctx.f.label();
  j["equation"] = {{"n", ctx.cfg.n}};
  j["space"] = {{"dim", ctx.cfg.space_dim},
                {"p", num(ctx.cfg.p)},
                {"M", num(modulus_of_concavity(ctx.space))}};
  j["grid"] = {{"points", ctx.grid.size()},
               {"lo", num(ctx.cfg.grid.lo)},
               {"hi", num(ctx.cfg.grid.hi)},
               {"dyadic_bits", ctx.cfg.grid.dyadic_bits ? Json(*ctx.cfg.grid.dyadic_bits)
                                                        : Json(nullptr)}};
  return j;
}

double norm_of(const Context& ctx, const YVector& v) { return to_double(pnorm(ctx.space, v)); }

void mark(CommandResult& res, bool ok) {
  if (!ok) {
    res.status = kFail;
    res.report["status"] = "fail";
  }
}

void fail_with(CommandResult& res, const std::string& kind, const std::string& message) {
  mark(res, false);
  res.report["error"] = {{"kind", kind}, {"message", message}};
}

void append_trace(CsvTable& t, const XPoint& x, const std::string& component,
                  const ApproximantResult& r) {
  for (std::size_t m = 0; m < r.trace.size(); ++m) {
    std::vector<std::string> row;
    append_coords(row, x.coords());
    row.push_back(component);
    row.push_back(std::to_string(m + 1));
    append_coords(row, r.trace[m].coords());
    row.push_back(fmt17(r.tails[m]));
    t.rows.push_back(std::move(row));
  }
}

std::vector<std::string> trace_header(const Context& ctx) {
  auto h = coord_columns("x", ctx.cfg.domain_dim);
  h.push_back("component");
  h.push_back("m");
  for (auto& c : coord_columns("value", ctx.cfg.space_dim)) h.push_back(c);
  h.push_back("tail");
  return h;
}

Json direction_json(const std::optional<Direction>& d) {
  return d ? Json(to_string(*d)) : Json(nullptr);
}

// ---------------------------------------------------------------------------

CommandResult check_solution(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "check-solution");
  res.points.header = coord_columns("x", ctx.cfg.domain_dim);
  for (auto& c : coord_columns("y", ctx.cfg.domain_dim)) res.points.header.push_back(c);
  res.points.header.push_back("residual");

  double max_f = 0;
  for (const auto& x : ctx.grid) max_f = std::max(max_f, norm_of(ctx, ctx.f(x)));
  double max_res = 0;
  Json worst = nullptr;
  for (const auto& x : ctx.grid) {
    for (const auto& y : ctx.grid) {
      const double r = norm_of(ctx, delta_f(ctx.f, ctx.eq, x, y));
      if (r > max_res || worst.is_null()) {
        max_res = std::max(max_res, r);
        worst = {{"x", to_json(x)}, {"y", to_json(y)}};
      }
      std::vector<std::string> row;
      append_coords(row, x.coords());
      append_coords(row, y.coords());
      row.push_back(fmt17(r));
      res.points.rows.push_back(std::move(row));
    }
  }
  const double threshold = ctx.cfg.tolerance * (1 + max_f);
  res.report["pairs"] = ctx.grid.size() * ctx.grid.size();
  res.report["max_residual"] = num(max_res);
  res.report["worst_pair"] = worst;
  res.report["max_abs_f"] = num(max_f);
  res.report["tolerance"] = num(ctx.cfg.tolerance);
  res.report["threshold"] = num(threshold);
  mark(res, max_res <= threshold);
  return res;
}

CommandResult hyers(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "hyers");
  IterationConfig it = ctx.cfg.iteration;
  res.report["iteration"] = {{"target", to_string(it.target)},
                             {"direction", to_string(it.direction)},
                             {"m_max", it.m_max},
                             {"tol", num(it.tol)}};
  res.points.header = coord_columns("x", ctx.cfg.domain_dim);
  for (auto& c : coord_columns("value", ctx.cfg.space_dim)) res.points.header.push_back(c);
  for (const char* c : {"converged", "m_used", "tail", "tail_estimate"})
    res.points.header.emplace_back(c);
  res.trace.header = trace_header(ctx);

  bool all = true;
  int max_m = 0;
  double max_tail = 0;
  Json pts = Json::array();
  for (const auto& x : ctx.grid) {
    ApproximantResult r;
    try {
      r = approximant(ctx.f, it, x);
    } catch (const DivergenceError& e) {
      append_trace(res.trace, x, e.component(), e.partial());
      fail_with(res, "divergence", e.what());
      res.report["error"]["x"] = to_json(x);
      return res;
    }
    all = all && r.converged;
    max_m = std::max(max_m, r.m_used);
    max_tail = std::max(max_tail, r.tail);
    pts.push_back({{"x", to_json(x)},
                   {"value", to_json(r.value)},
                   {"converged", r.converged},
                   {"m_used", r.m_used},
                   {"tail", num(r.tail)}});
    std::vector<std::string> row;
    append_coords(row, x.coords());
    append_coords(row, r.value.coords());
    row.push_back(r.converged ? "true" : "false");
    row.push_back(std::to_string(r.m_used));
    row.push_back(fmt17(r.tail));
    row.push_back(r.tail_estimate ? fmt17(*r.tail_estimate) : "");
    res.points.rows.push_back(std::move(row));
    append_trace(res.trace, x, std::string(to_string(it.target)), r);
  }
  res.report["all_converged"] = all;
  res.report["max_m_used"] = max_m;
  res.report["max_tail"] = num(max_tail);
  res.report["points"] = std::move(pts);
  mark(res, all);
  return res;
}

CommandResult decompose(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "decompose");
  IterationConfig cq = ctx.cfg.iteration;
  IterationConfig ct = ctx.cfg.iteration;
  cq.direction = ct.direction = ctx.cfg.direction.value_or(Direction::grow);
  res.report["iteration"] = {{"direction", to_string(cq.direction)},
                             {"m_max", cq.m_max},
                             {"tol", num(cq.tol)}};
  res.points.header = coord_columns("x", ctx.cfg.domain_dim);
  for (const std::string pre : {"f", "Q", "T"})
    for (auto& c : coord_columns(pre, ctx.cfg.space_dim)) res.points.header.push_back(c);
  res.points.header.emplace_back("reconstruction_error");
  res.trace.header = trace_header(ctx);

  double max_err = 0;
  double max_hq = 0, max_ht = 0;
  Json pts = Json::array();
  for (const auto& x : ctx.grid) {
    MixedDecomposition d;
    try {
      d = mixed_decomposition(ctx.f, cq, ct, x);
    } catch (const DivergenceError& e) {
      append_trace(res.trace, x, e.component(), e.partial());
      fail_with(res, "divergence", e.what());
      res.report["error"]["component"] = e.component();
      res.report["error"]["x"] = to_json(x);
      return res;
    }
    const YVector fx = ctx.f(x);
    const double err = norm_of(ctx, fx - d.quadratic - d.quartic);
    max_err = std::max(max_err, err);
    // Q(2x) = 4Q(x), T(2x) = 16T(x) from the same iterations at 2x.
    try {
      const auto d2 = mixed_decomposition(ctx.f, cq, ct, Real(2) * x);
      max_hq = std::max(max_hq, homogeneity_check(ctx.space, d.q0, d2.q0, Target::quadratic));
      max_ht = std::max(max_ht, homogeneity_check(ctx.space, d.t0, d2.t0, Target::quartic));
    } catch (const DivergenceError&) {
      // 2x may leave the convergent range; homogeneity is then not reported there.
    }
    pts.push_back({{"x", to_json(x)},
                   {"Q", to_json(d.quadratic)},
                   {"T", to_json(d.quartic)},
                   {"reconstruction_error", num(err)}});
    std::vector<std::string> row;
    append_coords(row, x.coords());
    append_coords(row, fx.coords());
    append_coords(row, d.quadratic.coords());
    append_coords(row, d.quartic.coords());
    row.push_back(fmt17(err));
    res.points.rows.push_back(std::move(row));
    append_trace(res.trace, x, "quadratic", d.q0);
    append_trace(res.trace, x, "quartic", d.t0);
  }
  res.report["max_reconstruction_error"] = num(max_err);
  res.report["max_homogeneity_deviation_q"] = num(max_hq);
  res.report["max_homogeneity_deviation_t"] = num(max_ht);
  res.report["points"] = std::move(pts);
  return res;
}

/// phi with theta filled in, fitted on the grid pairs when not configured.
std::pair<PerturbationSpec, std::string> resolve_phi(const Context& ctx) {
  const PerturbationConfig& pc = ctx.cfg.perturbation;
  PerturbationSpec phi{pc.kind, 0, pc.r, pc.s};
  if (pc.theta) {
    phi.theta = *pc.theta;
    return {phi, "config"};
  }
  phi.theta = empirical_theta(ctx.f, ctx.eq, pc.kind, pc.r, pc.s, grid_pairs(ctx.grid));
  return {phi, "empirical"};
}

Json phi_json(const PerturbationSpec& phi, const std::string& source) {
  return {{"kind", to_string(phi.kind)},
          {"theta", num(phi.theta)},
          {"theta_source", source},
          {"r", num(phi.r)},
          {"s", num(phi.s)}};
}

CommandResult certify_cmd(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "certify");
  res.report["flavor"] = to_string(ctx.cfg.flavor);
  PerturbationSpec phi;
  std::string source;
  try {
    std::tie(phi, source) = resolve_phi(ctx);
  } catch (const InfeasibleError& e) {
    fail_with(res, "infeasible", e.what());
    Json pairs = Json::array();
    for (const auto& [x, y] : e.pairs()) pairs.push_back({to_json(x), to_json(y)});
    res.report["error"]["pairs"] = std::move(pairs);
    return res;
  }
  res.report["phi"] = phi_json(phi, source);

  CertifyOptions opt;
  opt.iteration = ctx.cfg.iteration;
  opt.direction = ctx.cfg.direction;
  opt.mode = ctx.cfg.series;
  opt.alt_exponent = ctx.cfg.alt_exponent;
  CertificationReport rep;
  try {
    if (ctx.cfg.flavor != Flavor::quartic)
      require_dyadic_for_shrink(ctx.cfg, opt.direction.value_or(select_direction(Target::quadratic, phi)));
    if (ctx.cfg.flavor != Flavor::quadratic)
      require_dyadic_for_shrink(ctx.cfg, opt.direction.value_or(select_direction(Target::quartic, phi)));
    rep = certify(ctx.f, phi, ctx.cfg.flavor, bound_params(ctx.cfg), ctx.grid, opt);
  } catch (const RegimeError& e) {
    fail_with(res, "regime", e.what());
    return res;
  }

  res.report["direction_q"] = direction_json(rep.direction_q);
  res.report["direction_t"] = direction_json(rep.direction_t);
  res.report["series"] = ctx.cfg.series == SeriesMode::closed_form ? "closed_form" : "truncated";
  Json premise = {{"ok", rep.premise_ok},
                  {"pairs", rep.premise_pairs},
                  {"worst_ratio", num(rep.worst_premise_ratio)}};
  if (rep.worst_premise_pair)
    premise["worst_pair"] = {{"x", to_json(rep.worst_premise_pair->first)},
                             {"y", to_json(rep.worst_premise_pair->second)}};
  res.report["premise"] = std::move(premise);
  res.report["bound"] = {{"evaluated", rep.bound_evaluated},
                         {"exponent_q", rep.exponent_q},
                         {"exponent_t", rep.exponent_t},
                         {"ok", rep.bound_ok},
                         {"worst_ratio", num(rep.worst_bound_ratio)}};
  res.report["bound_alt"] = {{"exponent", rep.alt_exponent},
                             {"ok", rep.alt_bound_ok},
                             {"worst_ratio", num(rep.alt_worst_bound_ratio)}};

  res.points.header = coord_columns("x", ctx.cfg.domain_dim);
  for (const char* c : {"lhs", "rhs", "ratio", "rhs_alt", "ratio_alt", "m_used_q", "m_used_t"})
    res.points.header.emplace_back(c);
  for (const auto& d : rep.details) {
    std::vector<std::string> row;
    append_coords(row, d.x.coords());
    for (double v : {d.lhs, d.rhs, d.ratio, d.rhs_alt, d.ratio_alt}) row.push_back(fmt17(v));
    row.push_back(std::to_string(d.m_used_q));
    row.push_back(std::to_string(d.m_used_t));
    res.points.rows.push_back(std::move(row));
  }
  mark(res, rep.premise_ok && rep.bound_ok);
  return res;
}

CommandResult identities(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "identities");
  res.points.header = {"identity", "max_residual", "magnitude", "threshold", "pass"};
  Json rows = Json::array();
  bool all = true;
  for (IdentityId id : kAllIdentities) {
    double max_res = 0, mag = 0;
    for (const auto& x : ctx.grid) {
      for (const auto& y : ctx.grid) {
        const IdentitySides s = identity_sides(ctx.f, id, ctx.eq, x, y);
        max_res = std::max(max_res, norm_of(ctx, s.residual()));
        mag = std::max({mag, norm_of(ctx, s.lhs), norm_of(ctx, s.rhs)});
      }
    }
    const double threshold = ctx.cfg.tolerance * (1 + mag);
    const bool ok = max_res <= threshold;
    all = all && ok;
    rows.push_back({{"identity", to_string(id)},
                    {"max_residual", num(max_res)},
                    {"magnitude", num(mag)},
                    {"threshold", num(threshold)},
                    {"pass", ok}});
    res.points.rows.push_back({std::string(to_string(id)), fmt17(max_res), fmt17(mag),
                               fmt17(threshold), ok ? "true" : "false"});
  }
  res.report["tolerance"] = num(ctx.cfg.tolerance);
  res.report["identities"] = std::move(rows);
  mark(res, all);
  return res;
}

CommandResult bounds(const Context& ctx) {
  CommandResult res;
  res.report = header(ctx, "bounds");
  const Flavor flavor = ctx.cfg.flavor;
  res.report["flavor"] = to_string(flavor);
  PerturbationSpec phi;
  std::string source;
  try {
    std::tie(phi, source) = resolve_phi(ctx);
  } catch (const InfeasibleError& e) {
    fail_with(res, "infeasible", e.what());
    return res;
  }
  res.report["phi"] = phi_json(phi, source);
  const BoundParams bp = bound_params(ctx.cfg);
  res.report["params"] = {{"n", bp.n},
                          {"p", num(bp.p)},
                          {"M", num(bp.M)},
                          {"truncation", bp.truncation},
                          {"m_exponent_q", bp.m_exponent_q},
                          {"m_exponent_t", bp.m_exponent_t}};
  const CorollaryWhich which = corollary_for(flavor, phi.kind);
  res.report["corollary"] = to_string(which);

  res.points.header = coord_columns("x", ctx.cfg.domain_dim);
  for (const char* c : {"tilde_psi_q", "tilde_psi_t", "bound_closed", "bound_truncated",
                        "corollary_completed", "corollary_printed", "corollary_printed_alt"})
    res.points.header.emplace_back(c);
  bool corollary_dominates = true;
  // informational only: the printed readings are known to fall short for some shapes
  bool printed_dominates = true, printed_alt_dominates = true;
  Json pts = Json::array();
  try {
    for (const auto& x : ctx.grid) {
      const auto closed = evaluate_theorem_bound(flavor, ctx.cfg.direction, phi, bp, x);
      const double trunc =
          theorem_bound(flavor, ctx.cfg.direction, phi, bp, x, SeriesMode::truncated);
      const double cc = corollary_constant(which, bp, phi, x, CorollaryReading::completed);
      const double cp = corollary_constant(which, bp, phi, x, CorollaryReading::printed);
      const double ca = corollary_constant(which, bp, phi, x, CorollaryReading::printed_alt);
      corollary_dominates = corollary_dominates && within_slack(trunc, cc);
      printed_dominates = printed_dominates && within_slack(trunc, cp);
      printed_alt_dominates = printed_alt_dominates && within_slack(trunc, ca);
      const auto opt = [](const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); };
      pts.push_back({{"x", to_json(x)},
                     {"tilde_psi_q", opt(closed.tilde_psi_q)},
                     {"tilde_psi_t", opt(closed.tilde_psi_t)},
                     {"bound_closed", num(closed.value)},
                     {"bound_truncated", num(trunc)},
                     {"corollary_completed", num(cc)},
                     {"corollary_printed", num(cp)},
                     {"corollary_printed_alt", num(ca)}});
      std::vector<std::string> row;
      append_coords(row, x.coords());
      row.push_back(closed.tilde_psi_q ? fmt17(*closed.tilde_psi_q) : "");
      row.push_back(closed.tilde_psi_t ? fmt17(*closed.tilde_psi_t) : "");
      for (double v : {closed.value, trunc, cc, cp, ca}) row.push_back(fmt17(v));
      res.points.rows.push_back(std::move(row));
    }
  } catch (const RegimeError& e) {
    fail_with(res, "regime", e.what());
    return res;
  }
  res.report["corollary_dominates_truncated"] = corollary_dominates;
  res.report["printed_dominates_truncated"] = printed_dominates;
  res.report["printed_alt_dominates_truncated"] = printed_alt_dominates;
  res.report["points"] = std::move(pts);
  mark(res, corollary_dominates);
  return res;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check-solution", "decompose", "hyers",
                                                 "certify",        "identities", "bounds"};
  return names;
}

CommandResult run_command(std::string_view name, const RunConfig& cfg) {
  const Context ctx(cfg);
  try {
    if (name == "check-solution") return check_solution(ctx);
    if (name == "decompose") return decompose(ctx);
    if (name == "hyers") return hyers(ctx);
    if (name == "certify") return certify_cmd(ctx);
    if (name == "identities") return identities(ctx);
    if (name == "bounds") return bounds(ctx);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    CommandResult res;
    res.report = header(ctx, name);
    fail_with(res, "evaluation", e.what());
    return res;
  }
  throw InputError("unknown command '" + std::string(name) + "'");
}

}  // namespace qqstab::cli
