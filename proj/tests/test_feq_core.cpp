#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qqstab/feq_core.hpp"
#include "qqstab/grid.hpp"
#include "support.hpp"

using namespace qqstab;
using testsupport::poly;

namespace {

const QuasiNormSpec R1(1, 1.0);

SampleFn scalar_fn(std::function<Real(const Real&)> g, const char* label) {
  return SampleFn(1, R1, [g](const XPoint& x) { return YVector{g(x[0])}; }, label);
}

double d(const YVector& v) { return to_double(v[0]); }

double max_residual_on_grid(const SampleFn& f, int n, const std::vector<XPoint>& grid,
                            double* max_f) {
  const EquationParams eq(n);
  double worst = 0;
  *max_f = 0;
  for (const auto& x : grid) {
    *max_f = std::max(*max_f, to_double(pnorm(f.target(), f(x))));
    for (const auto& y : grid)
      worst = std::max(worst, to_double(pnorm(f.target(), delta_f(f, eq, x, y))));
  }
  return worst;
}

}  // namespace

TEST(EquationParams, RejectsDegenerateN) {
  for (int n : {0, 1, -1}) EXPECT_THROW(EquationParams{n}, InputError);
  EXPECT_EQ(EquationParams(-3).n(), -3);
  EXPECT_EQ(EquationParams(-3).n2(), Real(9));
}

TEST(SampleFn, RequiresZeroAtOrigin) {
  EXPECT_THROW(scalar_fn([](const Real& x) { return x * x + 1; }, "shifted"), InputError);
}

TEST(SampleFn, WrapsEvaluatorFailures) {
  const SampleFn f = scalar_fn(
      [](const Real& x) -> Real {
        if (x > 1) throw std::runtime_error("boom");
        return x * x;
      },
      "partial");
  EXPECT_THROW(f(XPoint{2}), EvaluationError);
  EXPECT_THROW(f(XPoint{1, 1}), EvaluationError);
}

TEST(DeltaF, Examples) {
  const EquationParams n2(2);
  const SampleFn cube = builtin_fn("cube", 1, R1);
  // 27 + 1 - 32 - 0 - 16 + 8 + 6
  EXPECT_EQ(d(delta_f(cube, n2, XPoint{1}, XPoint{1})), -6.0);
  const SampleFn zero = builtin_fn("zero", 1, R1);
  EXPECT_EQ(d(delta_f(zero, n2, XPoint{0.75}, XPoint{-1.5})), 0.0);
}

TEST(DeltaF, OracleAgreementForNonSolution) {
  // term-by-term long double oracle for exp(x^2) - 1
  const SampleFn f = builtin_fn("exp_square", 1, R1);
  auto F = [](long double t) { return std::expm1l(t * t); };
  for (int n : {2, -3}) {
    const long double N2 = (long double)n * n;
    for (double x : {0.5, -0.25}) {
      for (double y : {0.125, 1.0}) {
        const long double want = F(n * x + y) + F(n * x - y) - N2 * F(x + y) - N2 * F(x - y) -
                                 2 * F(n * x) + 2 * N2 * F(x) + 2 * (N2 - 1) * F(y);
        const double got = d(delta_f(f, EquationParams(n), XPoint{x}, XPoint{y}));
        EXPECT_NEAR(got, (double)want, 1e-12 * (1 + std::abs((double)want)));
      }
    }
  }
}

TEST(DeltaF, PolySolutionsVanishOnDefaultGrid) {
  const auto grid = make_grid({});
  for (auto [a, b] : {std::pair{1.0, 1.0}, {3.0, -2.0}, {0.0, 1.0}, {1.0, 0.0}}) {
    const SampleFn f = to_sample_fn(PolySolution{Real(a), Real(b)});
    for (int n : {2, 3, -2, 5}) {
      double max_f;
      const double res = max_residual_on_grid(f, n, grid, &max_f);
      EXPECT_LE(res, 1e-9 * (1 + max_f)) << "a=" << a << " b=" << b << " n=" << n;
    }
  }
}

TEST(Transforms, Examples) {
  const SampleFn f = to_sample_fn(PolySolution{1, 1});
  EXPECT_EQ(d(g_transform(f)(XPoint{1})), -12.0);
  EXPECT_EQ(d(h_transform(f)(XPoint{1})), 12.0);
  EXPECT_EQ(d(g_transform(to_sample_fn(PolySolution{0, 1}))(XPoint{2})), -48.0);
  EXPECT_EQ(d(h_transform(to_sample_fn(PolySolution{1, 0}))(XPoint{2})), 192.0);
  const SampleFn zero = builtin_fn("zero", 1, R1);
  EXPECT_EQ(d(g_transform(zero)(XPoint{1})), 0.0);
  EXPECT_EQ(d(h_transform(zero)(XPoint{1})), 0.0);
}

TEST(Transforms, RecomposeExamples) {
  EXPECT_EQ(d(recompose(YVector{-12}, YVector{12})), 2.0);
  EXPECT_EQ(d(recompose(YVector{0}, YVector{0})), 0.0);
}

TEST(Transforms, RecomposeRoundTripForArbitraryF) {
  for (const char* name : {"cube", "exp_square"}) {
    const SampleFn f = builtin_fn(name, 1, R1);
    const SampleFn g = g_transform(f), h = h_transform(f);
    for (double x : testsupport::default_axis()) {
      const double want = d(f(XPoint{x}));
      const double got = d(recompose(g(XPoint{x}), h(XPoint{x})));
      EXPECT_TRUE(testsupport::rel_close(got, want, 1e-12)) << name << " x=" << x;
    }
  }
}

TEST(Transforms, HomogeneityOfParts) {
  const SampleFn f = to_sample_fn(PolySolution{3, -2});
  const SampleFn g = g_transform(f), h = h_transform(f);
  for (double x : testsupport::default_axis()) {
    EXPECT_EQ(d(g(XPoint{2 * x})), 4 * d(g(XPoint{x})));
    EXPECT_EQ(d(h(XPoint{2 * x})), 16 * d(h(XPoint{x})));
  }
}

TEST(Evenness, ExactSolutionsAreEven) {
  const SampleFn f = to_sample_fn(PolySolution{3, -2});
  for (double x : testsupport::default_axis()) EXPECT_EQ(d(f(XPoint{x})), d(f(XPoint{-x})));
}

TEST(Identities, Examples) {
  const SampleFn f = to_sample_fn(PolySolution{1, 1});
  const EquationParams n2(2);
  const IdentitySides s = identity_sides(f, IdentityId::double_step, n2, XPoint{1}, XPoint{0});
  EXPECT_EQ(d(s.lhs), 272.0);
  EXPECT_EQ(d(s.rhs), 20 * 20.0 - 64 * 2.0);
  EXPECT_EQ(d(s.residual()), 0.0);
  EXPECT_EQ(d(identity_residual(f, IdentityId::shift_2x, n2, XPoint{1}, XPoint{1})), 0.0);
  const SampleFn zero = builtin_fn("zero", 1, R1);
  for (IdentityId id : kAllIdentities)
    EXPECT_EQ(d(identity_residual(zero, id, n2, XPoint{0.5}, XPoint{1.5})), 0.0);
}

TEST(Identities, OracleValuesForCube) {
  // f = x^3 at x = 1, y = 1, n = 2, both sides by hand
  const SampleFn f = builtin_fn("cube", 1, R1);
  const EquationParams n2(2);
  const XPoint one{1};
  // f(3) + f(-1) vs 4f(2) + 4f(0) + 2f(2) - 8f(1) - 6f(1)
  EXPECT_EQ(d(identity_residual(f, IdentityId::shift_2y, n2, one, one)),
            (27 - 1) - (32 + 0 + 16 - 8 - 6));
  // f(3) + f(1) vs 4f(2) + 0 + 2f(2) - 8f(1) - 6f(1)
  EXPECT_EQ(d(identity_residual(f, IdentityId::shift_2x, n2, one, one)),
            (27 + 1) - (32 + 16 - 8 - 6));
  // f(4) vs 20f(2) - 64f(1)
  EXPECT_EQ(d(identity_residual(f, IdentityId::double_step, n2, one, one)),
            64 - (160 - 64));
  // f(3y) + f(y) vs 4f(2y) - 14f(y) + 2f(2y)
  EXPECT_EQ(d(identity_residual(f, IdentityId::multiples_of_y, n2, one, one)),
            (27 + 1) - (32 - 14 + 16));
}

TEST(Identities, VanishOnExactSolutionsForEveryN) {
  const auto grid = make_grid({});
  for (auto [a, b] : {std::pair{1.0, 1.0}, {3.0, -2.0}, {0.0, 1.0}, {1.0, 0.0}}) {
    const SampleFn f = to_sample_fn(PolySolution{Real(a), Real(b)});
    for (int n : {2, 3, -2, 5}) {
      for (IdentityId id : kAllIdentities) {
        double worst = 0, mag = 0;
        for (const auto& x : grid)
          for (const auto& y : grid) {
            const auto s = identity_sides(f, id, EquationParams(n), x, y);
            worst = std::max(worst, std::abs(d(s.residual())));
            mag = std::max({mag, std::abs(d(s.lhs)), std::abs(d(s.rhs))});
          }
        EXPECT_LE(worst, 1e-9 * (1 + mag)) << to_string(id) << " n=" << n;
      }
    }
  }
}

TEST(Identities, ParseRoundTrip) {
  for (IdentityId id : kAllIdentities) EXPECT_EQ(parse_identity_id(to_string(id)), id);
  EXPECT_THROW(parse_identity_id("no_such_identity"), InputError);
}

TEST(Biadditive, Examples) {
  const SampleFn sq = scalar_fn([](const Real& x) { return x * x; }, "x^2");
  EXPECT_EQ(d(biadditive_extract(sq, XPoint{1}, XPoint{1})), 1.0);
  EXPECT_EQ(d(biadditive_extract(sq, XPoint{1.5}, XPoint{0})), 0.0);
  const SampleFn q = scalar_fn([](const Real& x) { return -12 * x * x; }, "-12x^2");
  EXPECT_EQ(d(biadditive_extract(q, XPoint{2}, XPoint{3})), -72.0);
}

TEST(Biadditive, SymmetricAndAdditiveOnIntegerCombinations) {
  const SampleFn g = g_transform(to_sample_fn(PolySolution{2, 3}));
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      for (int k = -2; k <= 2; ++k) {
        const XPoint x{Real(i) / 4}, y{Real(j) / 4}, z{Real(k) / 2};
        EXPECT_EQ(d(biadditive_extract(g, x, y)), d(biadditive_extract(g, y, x)));
        EXPECT_NEAR(d(biadditive_extract(g, x + z, y)),
                    d(biadditive_extract(g, x, y)) + d(biadditive_extract(g, z, y)), 1e-12);
      }
}

TEST(FormSolution, Examples) {
  const QuasiNormSpec R1s(1, 1.0);
  const FormSolution scalar(1, {{Real(1.5)}}, {{Real(2.5)}});
  EXPECT_EQ(d(form_solution_eval(scalar, XPoint{1})), 4.0);

  const FormSolution ident(2, {{1, 0, 0, 1}}, {std::vector<Real>(16, Real(0))});
  EXPECT_EQ(d(form_solution_eval(ident, XPoint{1, 1})), 2.0);

  const auto D = quartic_monomial_tensor(2, {2, 2}, Real(1));
  const FormSolution quartic(2, {{0, 0, 0, 0}}, {D});
  EXPECT_EQ(d(form_solution_eval(quartic, XPoint{1, 2})), 4.0);
  (void)R1s;
}

TEST(FormSolution, RejectsAsymmetricOrMisshapenForms) {
  EXPECT_THROW(FormSolution(2, {{1, 2, 0, 1}}, {std::vector<Real>(16, Real(0))}), InputError);
  EXPECT_THROW(FormSolution(2, {{1, 0, 0}}, {std::vector<Real>(16, Real(0))}), InputError);
  std::vector<Real> t(16, Real(0));
  t[1] = 1;  // (0,0,0,1) without its permutations
  EXPECT_THROW(FormSolution(2, {{0, 0, 0, 0}}, {t}), InputError);
  EXPECT_THROW(to_sample_fn(FormSolution(2, {{1, 0, 0, 1}}, {std::vector<Real>(16, Real(0))}),
                            QuasiNormSpec(2, 1.0)),
               InputError);
}

TEST(FormSolution, ContractionOracleAndSolutionCertificate) {
  // Random symmetric forms on R^2 with two output coordinates.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> c(-3, 3);
  const std::size_t dim = 2;
  std::vector<std::vector<Real>> B(2), D(2);
  for (int k = 0; k < 2; ++k) {
    const Real b01 = c(rng);
    B[k] = {Real(c(rng)), b01, b01, Real(c(rng))};
    std::vector<Real> t(16, Real(0));
    for (int j = 0; j < 16; ++j) t[j] = c(rng);
    D[k] = symmetrize_tensor4(dim, t);
  }
  const FormSolution sol(dim, B, D);
  const QuasiNormSpec Y(2, 1.0);
  const SampleFn f = to_sample_fn(sol, Y);

  auto oracle = [&](int k, long double x0, long double x1) {
    const long double x[2] = {x0, x1};
    long double s = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += (long double)to_double(B[k][i * 2 + j]) * x[i] * x[j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m)
            s += (long double)to_double(D[k][((i * 2 + j) * 2 + l) * 2 + m]) * x[i] * x[j] *
                 x[l] * x[m];
    return (double)s;
  };
  GridSpec gs;
  gs.count = 9;
  gs.domain_dim = 2;
  const auto grid = make_grid(gs);
  for (const auto& x : grid) {
    const YVector v = f(x);
    for (int k = 0; k < 2; ++k)
      EXPECT_NEAR(to_double(v[k]), oracle(k, to_double(x[0]), to_double(x[1])),
                  1e-12 * (1 + std::abs(to_double(v[k]))));
  }
  for (int n : {2, 3, -2, 5}) {
    double max_f;
    const double res = max_residual_on_grid(f, n, grid, &max_f);
    EXPECT_LE(res, 1e-9 * (1 + max_f)) << "n=" << n;
  }
}

TEST(Polarization, Examples) {
  const SampleFn h = scalar_fn([](const Real& x) { return x * x * x * x; }, "x^4");
  const XPoint one{1}, minus{-1};
  EXPECT_EQ(d(polarize_quartic(h, one, one, one, one)), 1.0);
  EXPECT_EQ(d(polarize_quartic(h, one, one, one, minus)), -1.0);
  const SampleFn zero = builtin_fn("zero", 1, R1);
  EXPECT_EQ(d(polarize_quartic(zero, one, one, one, minus)), 0.0);
}

TEST(Polarization, BruteForceOracleAndSymmetry) {
  const SampleFn f = to_sample_fn(PolySolution{2, 5});
  const SampleFn h = h_transform(f);  // 24 x^4
  const std::vector<double> xs = {0.5, -1.25, 0.75, 2.0};
  // For h = 24 x^4 the 4-additive form is 24 x1 x2 x3 x4.
  const double want = 24 * xs[0] * xs[1] * xs[2] * xs[3];
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    const double got = d(polarize_quartic(h, XPoint{xs[perm[0]]}, XPoint{xs[perm[1]]},
                                          XPoint{xs[perm[2]]}, XPoint{xs[perm[3]]}));
    EXPECT_NEAR(got, want, 1e-12 * std::abs(want));
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double x : testsupport::default_axis())
    EXPECT_NEAR(d(polarize_quartic(h, XPoint{x}, XPoint{x}, XPoint{x}, XPoint{x})),
                d(h(XPoint{x})), 1e-12 * (1 + std::abs(d(h(XPoint{x})))));
}

TEST(Builtins, UnknownNameRejected) {
  EXPECT_THROW(builtin_fn("sine", 1, R1), InputError);
}
