#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqstab/feq_core.hpp"

namespace qqstab {

/// Which way the dyadic rescaling runs: x / 2^m (shrink) or 2^m x (grow).
enum class Direction { shrink, grow };
/// Which part of f the limit isolates.
enum class Target { quadratic, quartic };

std::string_view to_string(Direction d);
std::string_view to_string(Target t);
Direction parse_direction(std::string_view s);
Target parse_target(std::string_view s);

struct IterationConfig {
  int m_max = 24;
  double tol = 1e-10;
  Direction direction = Direction::grow;
  Target target = Target::quadratic;
  /// Stop at the first m whose successive difference is <= tol. Disable to
  /// record the full trace up to m_max.
  bool early_stop = true;

  /// Throws InputError unless m_max >= 2 and tol > 0.
  void validate() const;
};

struct ApproximantResult {
  XPoint point;
  /// The last iterate.
  YVector value;
  /// The m = 0 term, f(2x) - 16f(x) (quadratic) or f(2x) - 4f(x) (quartic).
  YVector base;
  /// Iterates for m = 1..m_used.
  std::vector<YVector> trace;
  /// p-norm of iterate(m) - iterate(m-1), for m = 1..m_used.
  std::vector<double> tails;
  bool converged = false;
  /// tails.back().
  double tail = 0;
  int m_used = 0;
  /// tail / (1 - ratio) with ratio the last tail ratio, when that ratio is in
  /// (0, 1); a computable surrogate for the distance to the limit.
  std::optional<double> tail_estimate;
};

/// Thrown when an iterate is not finite (e.g. 2^m x overflows f), or when a
/// decomposition component fails to converge. Carries the trace.
class DivergenceError : public Error {
 public:
  DivergenceError(std::string message, std::string component, ApproximantResult partial)
      : Error(std::move(message)), component_(std::move(component)), partial_(std::move(partial)) {}
  const std::string& component() const { return component_; }
  const ApproximantResult& partial() const { return partial_; }

 private:
  std::string component_;
  ApproximantResult partial_;
};

/// The direct-method limit at x:
///   quadratic, shrink  4^m  [f(x/2^(m-1)) - 16 f(x/2^m)]
///   quadratic, grow    4^-m [f(2^(m+1) x) - 16 f(2^m x)]
///   quartic,   shrink  16^m [f(x/2^(m-1)) -  4 f(x/2^m)]
///   quartic,   grow    16^-m[f(2^(m+1) x) -  4 f(2^m x)]
/// The bracket is formed before scaling. Reaching m_max without meeting tol
/// returns converged = false; a non-finite iterate throws DivergenceError.
ApproximantResult approximant(const SampleFn& f, const IterationConfig& cfg, const XPoint& x);

/// ||value(2x) - c value(x)|| with c = 4 (quadratic) or 16 (quartic).
/// Throws PreconditionError if either result is unconverged or the points
/// are not related by doubling.
double homogeneity_check(const QuasiNormSpec& space, const ApproximantResult& at_x,
                         const ApproximantResult& at_2x, Target target);

struct MixedDecomposition {
  /// -Q0(x) / 12, the quadratic part.
  YVector quadratic;
  /// T0(x) / 12, the quartic part.
  YVector quartic;
  ApproximantResult q0;
  ApproximantResult t0;
};

/// Q = -Q0/12 and T = T0/12 from the two component limits. Throws
/// DivergenceError naming the component that diverged or failed to converge.
MixedDecomposition mixed_decomposition(const SampleFn& f, IterationConfig cfg_q,
                                       IterationConfig cfg_t, const XPoint& x);

}  // namespace qqstab
