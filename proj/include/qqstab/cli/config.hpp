#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qqstab/bounds_engine.hpp"
#include "qqstab/grid.hpp"
#include "qqstab/hyers_solver.hpp"
#include "qqstab/perturbation_lab.hpp"

namespace qqstab::cli {

struct FunctionConfig {
  enum class Type { poly, form, builtin };
  Type type = Type::poly;
  double a = 0;
  double b = 0;
  /// Row-major per-coordinate tensors for type = form.
  std::vector<std::vector<double>> bilinear;
  std::vector<std::vector<double>> quartic;
  std::string builtin;
  std::optional<NoiseSpec> noise;
};

struct PerturbationConfig {
  ControlKind kind = ControlKind::constant;
  /// Empty: fit with empirical_theta on the grid pairs.
  std::optional<double> theta;
  double r = 0;
  double s = 0;
};

struct RunConfig {
  int n = 2;
  std::size_t space_dim = 1;
  double p = 1.0;
  std::size_t domain_dim = 1;
  FunctionConfig function;
  PerturbationConfig perturbation;
  IterationConfig iteration;
  /// Empty: dispatch by exponent regime (certify, bounds, decompose).
  std::optional<Direction> direction;
  Flavor flavor = Flavor::quadratic;
  int truncation = 64;
  int m_exponent_q = 8;
  int m_exponent_t = 8;
  int alt_exponent = 11;
  SeriesMode series = SeriesMode::closed_form;
  GridSpec grid;
  /// Relative tolerance of check-solution and identities.
  double tolerance = 1e-9;
};

/// Throws InputError (or nlohmann::json::exception) on malformed input.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

QuasiNormSpec target_space(const RunConfig& cfg);
SampleFn build_function(const RunConfig& cfg);
BoundParams bound_params(const RunConfig& cfg);

/// Throws InputError if a shrink run is requested on a non-dyadic grid.
void require_dyadic_for_shrink(const RunConfig& cfg, Direction d);

}  // namespace qqstab::cli
