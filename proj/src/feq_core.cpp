#include "qqstab/feq_core.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace qqstab {

EquationParams::EquationParams(int n) : n_(n) {
  if (n == 0 || n == 1 || n == -1)
    throw InputError("equation parameter n must satisfy n != 0, +-1, got " + std::to_string(n));
}

SampleFn::SampleFn(std::size_t domain_dim, QuasiNormSpec target, Eval eval, std::string label)
    : domain_dim_(domain_dim),
      target_(std::move(target)),
      eval_(std::make_shared<const Eval>(std::move(eval))),
      label_(std::move(label)) {
  if (domain_dim_ == 0) throw InputError("sample function needs domain_dim >= 1");
  if (!*eval_) throw InputError("sample function '" + label_ + "' has no evaluator");
  const YVector at_zero = (*this)(XPoint::zero(domain_dim_));
  if (!at_zero.is_zero()) throw InputError("sample function '" + label_ + "' has f(0) != 0");
}

YVector SampleFn::operator()(const XPoint& x) const {
  if (x.dim() != domain_dim_)
    throw EvaluationError("'" + label_ + "' evaluated at a point of dimension " +
                          std::to_string(x.dim()) + ", expected " + std::to_string(domain_dim_));
  YVector out;
  try {
    out = (*eval_)(x);
  } catch (const EvaluationError&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("'" + label_ + "' failed: " + e.what());
  }
  if (out.dim() != target_.dim())
    throw EvaluationError("'" + label_ + "' returned dimension " + std::to_string(out.dim()) +
                          ", expected " + std::to_string(target_.dim()));
  return out;
}

SampleFn to_sample_fn(const PolySolution& sol, const QuasiNormSpec& target) {
  const std::size_t k = target.dim();
  auto eval = [sol, k](const XPoint& x) {
    const Real x2 = x[0] * x[0];
    const Real v = sol.a * x2 * x2 + sol.b * x2;
    return YVector(std::vector<Real>(k, v));
  };
  return SampleFn(1, target, eval,
                  "poly(a=" + sol.a.str() + ",b=" + sol.b.str() + ")");
}

namespace {

std::size_t idx4(std::size_t d, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return ((i * d + j) * d + k) * d + l;
}

bool close(const Real& a, const Real& b) {
  return abs(a - b) <= Real(1e-12) * (1 + abs(a) + abs(b));
}

}  // namespace

FormSolution::FormSolution(std::size_t domain_dim, std::vector<std::vector<Real>> bilinear,
                           std::vector<std::vector<Real>> quartic)
    : dim_(domain_dim), bilinear_(std::move(bilinear)), quartic_(std::move(quartic)) {
  const std::size_t d = dim_;
  if (d == 0) throw InputError("form solution needs domain_dim >= 1");
  if (bilinear_.empty() || bilinear_.size() != quartic_.size())
    throw InputError("form solution needs one B and one D per output coordinate");
  for (std::size_t c = 0; c < bilinear_.size(); ++c) {
    const auto& b = bilinear_[c];
    const auto& t = quartic_[c];
    if (b.size() != d * d) throw InputError("B must be a d x d matrix");
    if (t.size() != d * d * d * d) throw InputError("D must be a d^4 tensor");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!close(b[i * d + j], b[j * d + i])) throw InputError("B is not symmetric");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            const Real& v = t[idx4(d, i, j, k, l)];
            // Transpositions (01), (12), (23) generate all permutations.
            if (!close(v, t[idx4(d, j, i, k, l)]) || !close(v, t[idx4(d, i, k, j, l)]) ||
                !close(v, t[idx4(d, i, j, l, k)]))
              throw InputError("D is not fully symmetric");
          }
  }
}

std::vector<Real> symmetrize_tensor4(std::size_t d, const std::vector<Real>& t) {
  if (t.size() != d * d * d * d) throw InputError("symmetrize_tensor4: expected d^4 entries");
  std::vector<Real> out(t.size(), Real(0));
  std::array<std::size_t, 4> perm = {0, 1, 2, 3};
  std::array<std::size_t, 4> idx{};
  for (idx[0] = 0; idx[0] < d; ++idx[0])
    for (idx[1] = 0; idx[1] < d; ++idx[1])
      for (idx[2] = 0; idx[2] < d; ++idx[2])
        for (idx[3] = 0; idx[3] < d; ++idx[3]) {
          Real acc = 0;
          perm = {0, 1, 2, 3};
          do {
            acc += t[idx4(d, idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]])];
          } while (std::next_permutation(perm.begin(), perm.end()));
          out[idx4(d, idx[0], idx[1], idx[2], idx[3])] = acc / 24;
        }
  return out;
}

std::vector<Real> quartic_monomial_tensor(std::size_t d, const std::vector<int>& powers,
                                          const Real& coeff) {
  if (powers.size() != d) throw InputError("monomial exponent vector must have length d");
  if (std::any_of(powers.begin(), powers.end(), [](int e) { return e < 0; }) ||
      std::accumulate(powers.begin(), powers.end(), 0) != 4)
    throw InputError("quartic monomial exponents must be non-negative and sum to 4");
  // One raw entry holding the whole coefficient, then symmetrize.
  std::array<std::size_t, 4> slot{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (int e = 0; e < powers[i]; ++e) slot[pos++] = i;
  std::vector<Real> raw(d * d * d * d, Real(0));
  raw[idx4(d, slot[0], slot[1], slot[2], slot[3])] = coeff;
  return symmetrize_tensor4(d, raw);
}

YVector form_solution_eval(const FormSolution& sol, const XPoint& x) {
  const std::size_t d = sol.domain_dim();
  if (x.dim() != d) throw InputError("form solution evaluated at a point of wrong dimension");
  YVector out = YVector::zero(sol.target_dim());
  for (std::size_t c = 0; c < sol.target_dim(); ++c) {
    const auto& b = sol.bilinear()[c];
    const auto& t = sol.quartic()[c];
    Real acc = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc += b[i * d + j] * x[i] * x[j];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Real xij = x[i] * x[j];
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) acc += t[idx4(d, i, j, k, l)] * xij * x[k] * x[l];
      }
    out[c] = acc;
  }
  return out;
}

SampleFn to_sample_fn(const FormSolution& sol, const QuasiNormSpec& target) {
  if (target.dim() != sol.target_dim())
    throw InputError("form solution has " + std::to_string(sol.target_dim()) +
                     " output coordinates but the target space has dimension " +
                     std::to_string(target.dim()));
  return SampleFn(sol.domain_dim(), target,
                  [sol](const XPoint& x) { return form_solution_eval(sol, x); }, "form");
}

YVector delta_f(const SampleFn& f, const EquationParams& params, const XPoint& x,
                const XPoint& y) {
  const Real n = params.n();
  const Real n2 = params.n2();
  const XPoint nx = n * x;
  YVector r = f(nx + y);
  r += f(nx - y);
  r -= n2 * f(x + y);
  r -= n2 * f(x - y);
  r -= Real(2) * f(nx);
  r += Real(2) * n2 * f(x);
  r += Real(2) * (n2 - 1) * f(y);
  return r;
}

SampleFn g_transform(const SampleFn& f) {
  return SampleFn(
      f.domain_dim(), f.target(),
      [f](const XPoint& x) { return f(Real(2) * x) - Real(16) * f(x); }, "g[" + f.label() + "]");
}

SampleFn h_transform(const SampleFn& f) {
  return SampleFn(
      f.domain_dim(), f.target(),
      [f](const XPoint& x) { return f(Real(2) * x) - Real(4) * f(x); }, "h[" + f.label() + "]");
}

YVector recompose(const YVector& g_val, const YVector& h_val) {
  return (h_val - g_val) / Real(12);
}

std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::shift_2y: return "shift_2y";
    case IdentityId::shift_2x: return "shift_2x";
    case IdentityId::double_step: return "double_step";
    case IdentityId::multiples_of_y: return "multiples_of_y";
    case IdentityId::quartic_h_relation: return "quartic_h_relation";
    case IdentityId::quadratic_on_g: return "quadratic_on_g";
  }
  throw InputError("unknown identity id");
}

IdentityId parse_identity_id(std::string_view name) {
  for (IdentityId id : kAllIdentities)
    if (to_string(id) == name) return id;
  throw InputError("unknown identity id '" + std::string(name) + "'");
}

IdentitySides identity_sides(const SampleFn& f, IdentityId id, const EquationParams& params,
                             const XPoint& x, const XPoint& y) {
  const Real two = 2;
  switch (id) {
    case IdentityId::shift_2y:
      return {f(x + two * y) + f(x - two * y),
              Real(4) * f(x + y) + Real(4) * f(x - y) + two * f(two * y) - Real(8) * f(y) -
                  Real(6) * f(x)};
    case IdentityId::shift_2x:
      return {f(two * x + y) + f(two * x - y),
              Real(4) * f(x + y) + Real(4) * f(x - y) + two * f(two * x) - Real(8) * f(x) -
                  Real(6) * f(y)};
    case IdentityId::double_step:
      return {f(Real(4) * x), Real(20) * f(two * x) - Real(64) * f(x)};
    case IdentityId::multiples_of_y: {
      const Real n = params.n();
      const Real n2 = params.n2();
      return {f((n + 1) * y) + f((n - 1) * y),
              n2 * f(two * y) - two * (two * n2 - 1) * f(y) + two * f(n * y)};
    }
    case IdentityId::quartic_h_relation: {
      const SampleFn h = h_transform(f);
      return {h(two * x + y) + h(two * x - y),
              Real(4) * h(x + y) + Real(4) * h(x - y) + Real(24) * h(x) - Real(6) * h(y)};
    }
    case IdentityId::quadratic_on_g: {
      const SampleFn g = g_transform(f);
      return {g(x + y) + g(x - y), two * g(x) + two * g(y)};
    }
  }
  throw InputError("unknown identity id");
}

YVector identity_residual(const SampleFn& f, IdentityId id, const EquationParams& params,
                          const XPoint& x, const XPoint& y) {
  return identity_sides(f, id, params, x, y).residual();
}

YVector biadditive_extract(const SampleFn& q, const XPoint& x, const XPoint& y) {
  return (q(x + y) - q(x - y)) / Real(4);
}

YVector polarize_quartic(const SampleFn& h, const XPoint& x1, const XPoint& x2,
                         const XPoint& x3, const XPoint& x4) {
  const std::array<const XPoint*, 4> args = {&x1, &x2, &x3, &x4};
  YVector acc = YVector::zero(h.target().dim());
  for (unsigned mask = 0; mask < 16; ++mask) {
    XPoint s = XPoint::zero(h.domain_dim());
    int size = 0;
    for (unsigned i = 0; i < 4; ++i)
      if (mask & (1u << i)) {
        s += *args[i];
        ++size;
      }
    if ((4 - size) % 2 == 0)
      acc += h(s);
    else
      acc -= h(s);
  }
  return acc / Real(24);
}

SampleFn builtin_fn(std::string_view name, std::size_t domain_dim, const QuasiNormSpec& target) {
  const std::size_t k = target.dim();
  if (name == "zero")
    return SampleFn(domain_dim, target, [k](const XPoint&) { return YVector::zero(k); }, "zero");
  if (name == "cube")
    return SampleFn(
        domain_dim, target,
        [k](const XPoint& x) { return YVector(std::vector<Real>(k, x[0] * x[0] * x[0])); },
        "cube");
  if (name == "exp_square")
    return SampleFn(
        domain_dim, target,
        [k](const XPoint& x) { return YVector(std::vector<Real>(k, expm1(x[0] * x[0]))); },
        "exp_square");
  throw InputError("unknown built-in function '" + std::string(name) + "'");
}

}  // namespace qqstab
