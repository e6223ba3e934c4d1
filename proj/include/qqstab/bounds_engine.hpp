#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqstab/feq_core.hpp"
#include "qqstab/hyers_solver.hpp"

namespace qqstab {

// ---------------------------------------------------------------------------
// Control functions
// ---------------------------------------------------------------------------

enum class ControlKind { constant, power_x, power_y, power_sum, power_product };

std::string_view to_string(ControlKind k);
ControlKind parse_control_kind(std::string_view s);

/// phi(x, y) in one of the shapes
///   constant       theta
///   power_x        theta ||x||^r
///   power_y        theta ||y||^s
///   power_sum      theta (||x||^r + ||y||^s)
///   power_product  theta ||x||^r ||y||^s
/// Exponents unused by the shape are ignored; those it uses must be > 0.
struct PerturbationSpec {
  ControlKind kind = ControlKind::constant;
  double theta = 0;
  double r = 0;
  double s = 0;

  /// Throws InputError on negative theta/exponents or a zero exponent the
  /// shape depends on.
  void validate() const;
  /// The exponents along which the defining series scale: {0}, {r}, {s},
  /// {r, s} or {r + s}.
  std::vector<double> effective_exponents() const;
};

using ControlFn = std::function<double(const XPoint&, const XPoint&)>;

/// phi(x, y). Powers of a zero norm are 0 for positive exponents.
double phi_eval(const PerturbationSpec& spec, const XPoint& x, const XPoint& y);
ControlFn as_control_fn(const PerturbationSpec& spec);

// ---------------------------------------------------------------------------
// psi functionals
// ---------------------------------------------------------------------------

/// One term w * phi(a x, b x) of psi; a and b are integer multiples.
struct PsiTerm {
  int a = 0;
  int b = 0;
  double weight = 0;
};

/// The 17 terms of psi for a given n, weights already divided by n^2(n^2-1):
///   phi(x,(n+2)x) + phi(x,(n-2)x) + 4phi(x,(n+1)x) + 4phi(x,(n-1)x)
///   + 10phi(x,nx) + phi(2x,2x) + 4phi(2x,x) + n^2 phi(x,3x)
///   + 2(3n^2-1) phi(x,2x) + (17n^2-8) phi(x,x)
///   + n^2/(n^2-1) [phi(0,(n+1)x) + phi(0,(n-3)x) + 10phi(0,(n-1)x)
///                  + 4phi(0,nx) + 4phi(0,(n-2)x)]
///   + (n^4+1)/(n^2-1) phi(0,2x) + 2(3n^4-n^2+2)/(n^2-1) phi(0,x)
std::array<PsiTerm, 17> psi_terms(int n);

/// psi(x) = sum w_k phi(a_k x, b_k x). The quadratic and quartic functionals
/// share this form; `target` only labels which hypothesis phi belongs to.
double psi_eval(Target target, const ControlFn& phi, int n, const XPoint& x);
double psi_eval(Target target, const PerturbationSpec& phi, int n, const XPoint& x);

/// sum w_k^p phi(a_k x, b_k x)^p, the termwise p-power upper bound of psi^p.
double psi_p_upper(Target target, const ControlFn& phi, int n, double p, const XPoint& x);
double psi_p_upper(Target target, const PerturbationSpec& phi, int n, double p,
                   const XPoint& x);

// ---------------------------------------------------------------------------
// Regime and series
// ---------------------------------------------------------------------------

struct BoundParams {
  int n = 2;
  double p = 1.0;
  double M = 1.0;
  int truncation = 64;
  int m_exponent_q = 8;
  int m_exponent_t = 8;

  /// n from the equation, p and M from the target space.
  static BoundParams from(const EquationParams& eq, const QuasiNormSpec& space);
  /// Throws InputError on inconsistent fields.
  void validate() const;
};

/// Critical exponent: 2 for the quadratic limit, 4 for the quartic one.
double critical_exponent(Target target);

/// grow when every effective exponent is below the critical value, shrink
/// when all are above. Throws RegimeError otherwise, naming the condition.
Direction select_direction(Target target, const PerturbationSpec& phi);

/// Throws RegimeError unless `direction` is the convergent one for phi.
void check_regime(Target target, Direction direction, const PerturbationSpec& phi);

struct SeriesResult {
  double value = 0;
  std::vector<double> partial_sums;
  double last_term = 0;
  /// last/partial < 1e-9 and the last term ratio < 1.
  bool accepted = false;
};

/// Truncated tilde-psi series with `params.truncation` terms:
///   shrink  sum_{i>=1} c^{pi}  psi_p_upper(x / 2^i)
///   grow    sum_{i>=0} c^{-pi} psi_p_upper(2^i x)
/// with c = 4 (quadratic) or 16 (quartic). Never throws on divergence;
/// inspect `accepted`.
SeriesResult sum_tilde_psi(Target target, Direction direction, const ControlFn& phi,
                           const BoundParams& params, const XPoint& x);

/// sum_tilde_psi, throwing RegimeError if the tail criterion fails.
double tilde_psi_truncated(Target target, Direction direction, const ControlFn& phi,
                           const BoundParams& params, const XPoint& x);

/// Closed form for power-type phi: each term of psi_p_upper is split by
/// (a + b)^p <= a^p + b^p into monomials c ||x||^{ep}, each summing as a
/// geometric series. Equal to the infinite series whenever phi^p is a single
/// monomial per term (every kind but power_sum, or power_sum at p = 1).
/// Throws RegimeError for the wrong direction or a critical exponent.
double tilde_psi_closed(Target target, Direction direction, const PerturbationSpec& phi,
                        const BoundParams& params, const XPoint& x);

/// Closed form for a PerturbationSpec; the truncated series for an
/// arbitrary control function.
double tilde_psi(Target target, Direction direction, const PerturbationSpec& phi,
                 const BoundParams& params, const XPoint& x);
double tilde_psi(Target target, Direction direction, const ControlFn& phi,
                 const BoundParams& params, const XPoint& x);

// ---------------------------------------------------------------------------
// Theorem bounds
// ---------------------------------------------------------------------------

enum class Flavor { quadratic, quartic, mixed };
enum class SeriesMode { closed_form, truncated };

std::string_view to_string(Flavor f);
Flavor parse_flavor(std::string_view s);

struct BoundEvaluation {
  double value = 0;
  std::optional<double> tilde_psi_q;
  std::optional<double> tilde_psi_t;
  std::optional<Direction> direction_q;
  std::optional<Direction> direction_t;
};

/// Right-hand sides
///   quadratic  ||f(2x) - 16f(x) - Q0(x)|| <= M^{e_q}/4 tilde_psi_q^{1/p}
///   quartic    ||f(2x) -  4f(x) - T0(x)|| <= M^{e_t}/16 tilde_psi_t^{1/p}
///   mixed      ||f(x) - Q(x) - T(x)||
///                 <= M/192 (4 M^{e_q} tilde_psi_q^{1/p} + M^{e_t} tilde_psi_t^{1/p})
/// An empty direction dispatches each part independently.
BoundEvaluation evaluate_theorem_bound(Flavor flavor, std::optional<Direction> direction,
                                       const PerturbationSpec& phi, const BoundParams& params,
                                       const XPoint& x,
                                       SeriesMode mode = SeriesMode::closed_form);

double theorem_bound(Flavor flavor, std::optional<Direction> direction,
                     const PerturbationSpec& phi, const BoundParams& params, const XPoint& x,
                     SeriesMode mode = SeriesMode::closed_form);

// ---------------------------------------------------------------------------
// Corollary closed forms
// ---------------------------------------------------------------------------

enum class CorollaryWhich {
  delta_q,        // constant phi, quadratic
  alpha_q,        // theta ||x||^r part, quadratic
  beta_q,         // theta ||y||^s part, quadratic
  sum_q,          // (alpha_q^p + beta_q^p)^{1/p}, power_sum phi
  product_q,      // theta ||x||^r ||y||^s, quadratic
  delta_t,
  alpha_t,
  beta_t,
  sum_t,
  product_t,
  mixed_sum,      // quadratic + quartic for constant / power_x / power_y / power_sum
  mixed_product,  // quadratic + quartic for power_product
};

/// How to read the published closed forms.
enum class CorollaryReading {
  /// Every term of the defining series accounted for; equals the closed-form
  /// theorem bound.
  completed,
  /// Brackets exactly as printed. alpha omits the two unit terms
  /// phi(x,(n+-2)x), beta omits 2^{sp}(n^2-1)^p from phi(2x,2x), and the
  /// mixed product form keeps only the quadratic part.
  printed,
  /// As `printed`, except beta_t follows beta_q's bracket instead of its own
  /// printing. Differs from `printed` only for beta_t (and sums using it).
  printed_alt,
};

std::string_view to_string(CorollaryWhich w);
CorollaryWhich parse_corollary_which(std::string_view s);
std::string_view to_string(CorollaryReading r);

/// Full right-hand side at x, prefactor M^{e} theta / (n^2(n^2-1)) included
/// (M/12 times the two parts for the mixed forms). Throws InputError when
/// phi's kind does not match `which`, RegimeError at a critical exponent.
double corollary_constant(CorollaryWhich which, const BoundParams& params,
                          const PerturbationSpec& phi, const XPoint& x,
                          CorollaryReading reading = CorollaryReading::completed);

/// The corollary matching phi's kind for a flavor: delta, alpha, beta, sum
/// or product (or the mixed variant).
CorollaryWhich corollary_for(Flavor flavor, ControlKind kind);

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

struct CertifyOptions {
  IterationConfig iteration;
  /// Empty: dispatch each part by the exponent regime.
  std::optional<Direction> direction;
  SeriesMode mode = SeriesMode::closed_form;
  /// Additional exponent of M the bound is certified at.
  int alt_exponent = 11;
};

struct PointCertificate {
  XPoint x;
  double lhs = 0;
  double rhs = 0;
  double rhs_alt = 0;
  double ratio = 0;
  double ratio_alt = 0;
  int m_used_q = 0;
  int m_used_t = 0;
};

struct CertificationReport {
  Flavor flavor = Flavor::quadratic;
  PerturbationSpec phi;
  std::optional<Direction> direction_q;
  std::optional<Direction> direction_t;
  int exponent_q = 8;
  int exponent_t = 8;
  int alt_exponent = 11;

  std::size_t premise_pairs = 0;
  bool premise_ok = false;
  double worst_premise_ratio = 0;
  std::optional<std::pair<XPoint, XPoint>> worst_premise_pair;

  /// False when the premise failed and the bound was not evaluated.
  bool bound_evaluated = false;
  bool bound_ok = false;
  double worst_bound_ratio = 0;
  bool alt_bound_ok = false;
  double alt_worst_bound_ratio = 0;

  std::vector<PointCertificate> details;
};

/// Checks ||Delta f(x,y)|| <= phi(x,y) on all grid pairs, then compares the
/// approximant error at every grid point with the theorem bound at the
/// configured exponents and at `alt_exponent`. Throws RegimeError if an
/// approximant does not converge or phi is outside the flavor's regime.
CertificationReport certify(const SampleFn& f, const PerturbationSpec& phi, Flavor flavor,
                            const BoundParams& params, const std::vector<XPoint>& grid,
                            const CertifyOptions& options = {});

}  // namespace qqstab
