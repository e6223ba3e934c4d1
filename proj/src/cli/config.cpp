#include "qqstab/cli/config.hpp"

#include <fstream>
#include <set>

namespace qqstab::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const char* where, std::set<std::string> allowed) {
  if (!j.is_object()) throw InputError(std::string(where) + " must be an object");
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) throw InputError("unknown key '" + k + "' in " + where);
}

template <class T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

NoiseSpec parse_noise(const json& j) {
  only_keys(j, "noise", {"amplitude", "shape", "seed", "r"});
  NoiseSpec n;
  get_if(j, "amplitude", n.amplitude);
  if (j.contains("shape")) n.shape = parse_noise_shape(j.at("shape").get<std::string>());
  get_if(j, "seed", n.seed);
  get_if(j, "r", n.r);
  n.validate();
  return n;
}

FunctionConfig parse_function(const json& j) {
  FunctionConfig f;
  const std::string type = j.value("type", std::string("poly"));
  if (type == "perturbed") {
    only_keys(j, "function", {"type", "base", "noise"});
    if (!j.contains("base") || !j.contains("noise"))
      throw InputError("perturbed function needs 'base' and 'noise'");
    if (j.at("base").contains("noise")) throw InputError("perturbed base must not carry noise");
    f = parse_function(j.at("base"));
    f.noise = parse_noise(j.at("noise"));
    return f;
  }
  if (type == "poly") {
    only_keys(j, "function", {"type", "a", "b", "noise"});
    f.type = FunctionConfig::Type::poly;
    get_if(j, "a", f.a);
    get_if(j, "b", f.b);
  } else if (type == "form") {
    only_keys(j, "function", {"type", "bilinear", "quartic", "noise"});
    f.type = FunctionConfig::Type::form;
    f.bilinear = j.at("bilinear").get<std::vector<std::vector<double>>>();
    f.quartic = j.at("quartic").get<std::vector<std::vector<double>>>();
  } else if (type == "builtin") {
    only_keys(j, "function", {"type", "name", "noise"});
    f.type = FunctionConfig::Type::builtin;
    f.builtin = j.at("name").get<std::string>();
  } else {
    throw InputError("unknown function type '" + type + "' (expected poly|form|builtin|perturbed)");
  }
  if (j.contains("noise")) f.noise = parse_noise(j.at("noise"));
  return f;
}

}  // namespace

namespace {

RunConfig parse_unchecked(const json& j) {
  only_keys(j, "config",
            {"equation", "space", "domain_dim", "function", "perturbation", "iteration",
             "certify", "bounds", "grid", "check"});
  RunConfig c;
  if (j.contains("equation")) {
    only_keys(j.at("equation"), "equation", {"n"});
    get_if(j.at("equation"), "n", c.n);
  }
  EquationParams eq(c.n);
  if (j.contains("space")) {
    only_keys(j.at("space"), "space", {"dim", "p"});
    get_if(j.at("space"), "dim", c.space_dim);
    get_if(j.at("space"), "p", c.p);
  }
  (void)QuasiNormSpec(c.space_dim, c.p);
  get_if(j, "domain_dim", c.domain_dim);
  if (c.domain_dim == 0) throw InputError("domain_dim must be >= 1");
  if (j.contains("function")) c.function = parse_function(j.at("function"));

  if (j.contains("perturbation")) {
    const json& pj = j.at("perturbation");
    only_keys(pj, "perturbation", {"kind", "theta", "r", "s"});
    if (pj.contains("kind")) c.perturbation.kind = parse_control_kind(pj.at("kind").get<std::string>());
    if (pj.contains("theta")) {
      const json& t = pj.at("theta");
      if (t.is_string()) {
        if (t.get<std::string>() != "empirical")
          throw InputError("perturbation theta must be a number or \"empirical\"");
      } else {
        c.perturbation.theta = t.get<double>();
      }
    }
    get_if(pj, "r", c.perturbation.r);
    get_if(pj, "s", c.perturbation.s);
    PerturbationSpec{c.perturbation.kind, c.perturbation.theta.value_or(0), c.perturbation.r,
                     c.perturbation.s}
        .validate();
  }

  if (j.contains("iteration")) {
    const json& ij = j.at("iteration");
    only_keys(ij, "iteration", {"m_max", "tol", "direction", "target", "early_stop"});
    get_if(ij, "m_max", c.iteration.m_max);
    get_if(ij, "tol", c.iteration.tol);
    get_if(ij, "early_stop", c.iteration.early_stop);
    if (ij.contains("target")) c.iteration.target = parse_target(ij.at("target").get<std::string>());
    if (ij.contains("direction")) {
      const std::string d = ij.at("direction").get<std::string>();
      if (d != "auto") c.direction = parse_direction(d);
    }
  }
  c.iteration.validate();
  if (c.direction) c.iteration.direction = *c.direction;

  if (j.contains("certify")) {
    only_keys(j.at("certify"), "certify", {"flavor"});
    if (j.at("certify").contains("flavor"))
      c.flavor = parse_flavor(j.at("certify").at("flavor").get<std::string>());
  }
  if (j.contains("bounds")) {
    const json& bj = j.at("bounds");
    only_keys(bj, "bounds", {"truncation", "m_exponent_q", "m_exponent_t", "alt_exponent", "series"});
    get_if(bj, "truncation", c.truncation);
    get_if(bj, "m_exponent_q", c.m_exponent_q);
    get_if(bj, "m_exponent_t", c.m_exponent_t);
    get_if(bj, "alt_exponent", c.alt_exponent);
    if (bj.contains("series")) {
      const std::string s = bj.at("series").get<std::string>();
      if (s == "closed_form") c.series = SeriesMode::closed_form;
      else if (s == "truncated") c.series = SeriesMode::truncated;
      else throw InputError("bounds series must be closed_form|truncated");
    }
  }
  bound_params(c).validate();

  c.grid.domain_dim = c.domain_dim;
  if (j.contains("grid")) {
    const json& gj = j.at("grid");
    only_keys(gj, "grid", {"lo", "hi", "count", "dyadic_bits", "dyadic"});
    get_if(gj, "lo", c.grid.lo);
    get_if(gj, "hi", c.grid.hi);
    if (gj.contains("count")) {
      const long long n = gj.at("count").get<long long>();
      if (n < 0) throw InputError("grid count must be >= 0");
      c.grid.count = static_cast<std::size_t>(n);
    }
    if (gj.contains("dyadic_bits")) c.grid.dyadic_bits = gj.at("dyadic_bits").get<int>();
    if (gj.contains("dyadic") && !gj.at("dyadic").get<bool>()) c.grid.dyadic_bits.reset();
  }
  if (c.grid.count == 0) throw InputError("grid is empty (count = 0)");
  if (c.direction) require_dyadic_for_shrink(c, *c.direction);

  if (j.contains("check")) {
    only_keys(j.at("check"), "check", {"tolerance"});
    get_if(j.at("check"), "tolerance", c.tolerance);
    if (!(c.tolerance > 0)) throw InputError("check tolerance must be > 0");
  }
  return c;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  try {
    return parse_unchecked(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("config field has the wrong type: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_run_config(j);
}

QuasiNormSpec target_space(const RunConfig& cfg) { return QuasiNormSpec(cfg.space_dim, cfg.p); }

SampleFn build_function(const RunConfig& cfg) {
  const QuasiNormSpec space = target_space(cfg);
  const FunctionConfig& fc = cfg.function;
  std::optional<SampleFn> base;
  switch (fc.type) {
    case FunctionConfig::Type::poly:
      if (cfg.domain_dim != 1) throw InputError("poly functions need domain_dim = 1");
      base = to_sample_fn(PolySolution{Real(fc.a), Real(fc.b)}, space);
      break;
    case FunctionConfig::Type::form: {
      auto conv = [](const std::vector<std::vector<double>>& v) {
        std::vector<std::vector<Real>> out;
        for (const auto& row : v) out.emplace_back(row.begin(), row.end());
        return out;
      };
      base = to_sample_fn(FormSolution(cfg.domain_dim, conv(fc.bilinear), conv(fc.quartic)), space);
      break;
    }
    case FunctionConfig::Type::builtin:
      base = builtin_fn(fc.builtin, cfg.domain_dim, space);
      break;
  }
  if (fc.noise) return make_perturbed(*base, *fc.noise);
  return *base;
}

BoundParams bound_params(const RunConfig& cfg) {
  BoundParams b = BoundParams::from(EquationParams(cfg.n), target_space(cfg));
  b.truncation = cfg.truncation;
  b.m_exponent_q = cfg.m_exponent_q;
  b.m_exponent_t = cfg.m_exponent_t;
  return b;
}

void require_dyadic_for_shrink(const RunConfig& cfg, Direction d) {
  if (d == Direction::shrink && !cfg.grid.dyadic_bits)
    throw InputError("shrink-direction runs need a dyadic grid (set grid.dyadic_bits)");
}

}  // namespace qqstab::cli
