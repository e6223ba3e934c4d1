#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qqstab/numeric.hpp"
#include "qqstab/pnorm_space.hpp"

namespace qqstab {

/// The integer n of f(nx+y) + f(nx-y) = n^2 f(x+y) + n^2 f(x-y) + 2f(nx)
/// - 2n^2 f(x) - 2(n^2-1) f(y). Requires n not in {0, 1, -1}.
class EquationParams {
 public:
  explicit EquationParams(int n);
  int n() const { return n_; }
  /// n^2 as a Real.
  Real n2() const { return Real(n_) * n_; }

 private:
  int n_;
};

/// A deterministic map X -> Y with f(0) = 0.
class SampleFn {
 public:
  using Eval = std::function<YVector(const XPoint&)>;

  /// Throws InputError if f(0) != 0 or the output has the wrong dimension.
  SampleFn(std::size_t domain_dim, QuasiNormSpec target, Eval eval, std::string label);

  /// Throws EvaluationError if the point has the wrong dimension, the
  /// underlying callable throws, or the output has the wrong dimension.
  YVector operator()(const XPoint& x) const;

  std::size_t domain_dim() const { return domain_dim_; }
  const QuasiNormSpec& target() const { return target_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t domain_dim_;
  QuasiNormSpec target_;
  std::shared_ptr<const Eval> eval_;
  std::string label_;
};

/// f(x) = a x^4 + b x^2 on X = R. On a target of dimension k every
/// coordinate carries the same polynomial.
struct PolySolution {
  Real a = 0;
  Real b = 0;
};

SampleFn to_sample_fn(const PolySolution& sol,
                      const QuasiNormSpec& target = QuasiNormSpec(1, 1.0));

/// f(x) = D(x,x,x,x) + B(x,x) with B a symmetric bilinear form and D a
/// symmetric 4-linear form, one of each per output coordinate.
///
/// B[k] is a row-major d x d matrix, D[k] a row-major d^4 tensor
/// (index ((i*d + j)*d + k)*d + l).
class FormSolution {
 public:
  /// Validates shapes and symmetry (to 1e-12 relative); throws InputError.
  FormSolution(std::size_t domain_dim, std::vector<std::vector<Real>> bilinear,
               std::vector<std::vector<Real>> quartic);

  std::size_t domain_dim() const { return dim_; }
  std::size_t target_dim() const { return bilinear_.size(); }
  const std::vector<std::vector<Real>>& bilinear() const { return bilinear_; }
  const std::vector<std::vector<Real>>& quartic() const { return quartic_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<Real>> bilinear_;
  std::vector<std::vector<Real>> quartic_;
};

/// Fully symmetric d^4 tensor T with T(x,x,x,x) = coeff * prod x_i^{powers_i}.
/// `powers` has length d and sums to 4.
std::vector<Real> quartic_monomial_tensor(std::size_t dim, const std::vector<int>& powers,
                                          const Real& coeff);

/// Average of a d^4 tensor over all 24 index permutations.
std::vector<Real> symmetrize_tensor4(std::size_t dim, const std::vector<Real>& t);

YVector form_solution_eval(const FormSolution& sol, const XPoint& x);

/// Throws InputError unless target.dim() == sol.target_dim().
SampleFn to_sample_fn(const FormSolution& sol, const QuasiNormSpec& target);

/// Delta f(x,y) = f(nx+y) + f(nx-y) - n^2 f(x+y) - n^2 f(x-y) - 2f(nx)
///                + 2n^2 f(x) + 2(n^2-1) f(y).
YVector delta_f(const SampleFn& f, const EquationParams& params, const XPoint& x,
                const XPoint& y);

/// g(x) = f(2x) - 16 f(x); the quadratic part times -12 for exact solutions.
SampleFn g_transform(const SampleFn& f);
/// h(x) = f(2x) - 4 f(x); the quartic part times 12 for exact solutions.
SampleFn h_transform(const SampleFn& f);
/// (h - g) / 12, which is f(x) when g and h are taken at the same x.
YVector recompose(const YVector& g_val, const YVector& h_val);

enum class IdentityId {
  shift_2y,
  shift_2x,
  double_step,
  multiples_of_y,
  quartic_h_relation,
  quadratic_on_g,
};

inline constexpr std::array<IdentityId, 6> kAllIdentities = {
    IdentityId::shift_2y,       IdentityId::shift_2x,           IdentityId::double_step,
    IdentityId::multiples_of_y, IdentityId::quartic_h_relation, IdentityId::quadratic_on_g,
};

std::string_view to_string(IdentityId id);
/// Throws InputError for unknown names.
IdentityId parse_identity_id(std::string_view name);

struct IdentitySides {
  YVector lhs;
  YVector rhs;
  YVector residual() const { return lhs - rhs; }
};

/// Both sides of a consequence of the equation:
///   shift_2y            f(x+2y)+f(x-2y) = 4f(x+y)+4f(x-y)+2f(2y)-8f(y)-6f(x)
///   shift_2x            f(2x+y)+f(2x-y) = 4f(x+y)+4f(x-y)+2f(2x)-8f(x)-6f(y)
///   double_step         f(4x) = 20f(2x) - 64f(x)
///   multiples_of_y      f((n+1)y)+f((n-1)y) = n^2 f(2y) - 2(2n^2-1)f(y) + 2f(ny)
///   quartic_h_relation  h(2x+y)+h(2x-y) = 4h(x+y)+4h(x-y)+24h(x)-6h(y), h = h_transform(f)
///   quadratic_on_g      g(x+y)+g(x-y) = 2g(x)+2g(y), g = g_transform(f)
IdentitySides identity_sides(const SampleFn& f, IdentityId id, const EquationParams& params,
                             const XPoint& x, const XPoint& y);

YVector identity_residual(const SampleFn& f, IdentityId id, const EquationParams& params,
                          const XPoint& x, const XPoint& y);

/// B(x,y) = (q(x+y) - q(x-y)) / 4.
YVector biadditive_extract(const SampleFn& q, const XPoint& x, const XPoint& y);

/// (1/24) sum over S subset {1..4} of (-1)^(4-|S|) h(sum_{i in S} x_i);
/// the symmetric 4-additive form with D(x,x,x,x) = h(x) for quartic h.
YVector polarize_quartic(const SampleFn& h, const XPoint& x1, const XPoint& x2,
                         const XPoint& x3, const XPoint& x4);

/// Named functions used by configs and tests: "zero", "cube" (x^3 in every
/// coordinate of x_1), "exp_square" (exp(x_1^2) - 1). Throws InputError.
SampleFn builtin_fn(std::string_view name, std::size_t domain_dim, const QuasiNormSpec& target);

}  // namespace qqstab
