#include <gtest/gtest.h>

#include <cmath>

#include "qqstab/grid.hpp"
#include "qqstab/hyers_solver.hpp"
#include "qqstab/perturbation_lab.hpp"
#include "support.hpp"

using namespace qqstab;

namespace {

const QuasiNormSpec R1(1, 1.0);

IterationConfig cfg(Target t, Direction d) {
  IterationConfig c;
  c.target = t;
  c.direction = d;
  return c;
}

double d0(const YVector& v) { return to_double(v[0]); }

/// x^4 + x^2 + eps |x|^r, a perturbation whose tails decay at ratio 2^r / 4
/// (quadratic) or 2^r / 16 (quartic) in the grow direction.
SampleFn coherent(double eps, double r) {
  return SampleFn(
      1, R1,
      [eps, r](const XPoint& x) {
        const Real t = x[0];
        const Real a = abs(t);
        const Real e = a == 0 ? Real(0) : Real(eps) * pow(a, Real(r));
        return YVector{t * t * t * t + t * t + e};
      },
      "coherent");
}

}  // namespace

TEST(IterationConfig, Validation) {
  IterationConfig c;
  c.m_max = 1;
  EXPECT_THROW(c.validate(), InputError);
  c = {};
  c.tol = 0;
  EXPECT_THROW(c.validate(), InputError);
  EXPECT_EQ(parse_direction("shrink"), Direction::shrink);
  EXPECT_EQ(parse_target("quartic"), Target::quartic);
  EXPECT_THROW(parse_direction("sideways"), InputError);
}

TEST(Approximant, ExampleQuadraticGrow) {
  const SampleFn f = to_sample_fn(PolySolution{1, 1});
  const auto r = approximant(f, cfg(Target::quadratic, Direction::grow), XPoint{1});
  EXPECT_EQ(d0(r.value), -12.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.m_used, 1);
  EXPECT_EQ(r.tail, 0.0);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(Approximant, ZeroFunction) {
  const SampleFn z = builtin_fn("zero", 1, R1);
  for (auto t : {Target::quadratic, Target::quartic})
    for (auto d : {Direction::shrink, Direction::grow})
      EXPECT_EQ(d0(approximant(z, cfg(t, d), XPoint{1.5}).value), 0.0);
}

TEST(Approximant, ExactOnSolutionsEveryIterate) {
  const auto grid = make_grid({});
  for (auto [a, b] : {std::pair{1.0, 1.0}, {3.0, -2.0}, {0.0, 1.0}, {1.0, 0.0}}) {
    const SampleFn f = to_sample_fn(PolySolution{Real(a), Real(b)});
    for (auto t : {Target::quadratic, Target::quartic}) {
      for (auto dir : {Direction::shrink, Direction::grow}) {
        IterationConfig c = cfg(t, dir);
        c.early_stop = false;
        for (const auto& x : grid) {
          const double xv = to_double(x[0]);
          const double want =
              t == Target::quadratic ? -12 * b * xv * xv : 12 * a * xv * xv * xv * xv;
          const auto r = approximant(f, c, x);
          ASSERT_EQ(r.trace.size(), std::size_t(c.m_max));
          for (const auto& it : r.trace)
            EXPECT_TRUE(testsupport::rel_close(d0(it), want, 1e-12))
                << to_string(t) << " " << to_string(dir) << " x=" << xv;
        }
      }
    }
  }
}

TEST(Approximant, BoundedNoiseGrowQuadratic) {
  const SampleFn f = make_perturbed(make_exact(1, 1), {1e-3, NoiseShape::bounded_oscillation, 7});
  const auto r = approximant(f, cfg(Target::quadratic, Direction::grow), XPoint{1});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(d0(r.value), -12.0, 4e-3);
  ASSERT_TRUE(r.tail_estimate.has_value() || r.tail == 0);
}

TEST(Approximant, TrailingTailsDecayWithReadRatio) {
  for (double rexp : {0.5, 1.0, 1.5}) {
    const SampleFn f = coherent(1e-3, rexp);
    for (auto [t, c] : {std::pair{Target::quadratic, 4.0}, {Target::quartic, 16.0}}) {
      IterationConfig ic = cfg(t, Direction::grow);
      ic.early_stop = false;
      ic.m_max = 16;
      const double bound = std::exp2(rexp) / c;
      for (double xv : {0.5, 1.0, 1.75}) {
        const auto r = approximant(f, ic, XPoint{xv});
        for (std::size_t m = 4; m + 1 < r.tails.size(); ++m) {
          if (r.tails[m] == 0 || r.tails[m] < 1e-25) break;  // below float128 resolution
          EXPECT_LE(r.tails[m + 1] / r.tails[m], bound + 0.1)
              << "r=" << rexp << " " << to_string(t) << " m=" << m;
        }
      }
    }
  }
}

TEST(Approximant, HashedNoiseTailsAreGeometricallyDominated) {
  // |tail_m| <= 4^-m * (|e(2^{m+1}x)| + 16|e(2^m x)| + 4 |e(2^m x)| + ...) <= 85 eps 4^-m
  const double eps = 1e-3;
  const SampleFn f = make_perturbed(make_exact(1, 1), {eps, NoiseShape::bounded_oscillation, 3});
  IterationConfig ic = cfg(Target::quadratic, Direction::grow);
  ic.early_stop = false;
  for (double xv : testsupport::default_axis()) {
    const auto r = approximant(f, ic, XPoint{xv});
    for (std::size_t i = 0; i < r.tails.size(); ++i) {
      const double m = double(i + 1);
      EXPECT_LE(r.tails[i], 85 * eps * std::pow(4.0, -m) * (1 + 1e-9));
    }
  }
}

TEST(Approximant, UnconvergedWhenBudgetTooSmall) {
  const SampleFn f = make_perturbed(make_exact(1, 1), {1e-3, NoiseShape::bounded_oscillation, 7});
  IterationConfig c = cfg(Target::quadratic, Direction::grow);
  c.m_max = 3;
  const auto r = approximant(f, c, XPoint{1.25});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.m_used, 3);
  EXPECT_EQ(r.trace.size(), 3u);
}

TEST(Approximant, OverflowRaisesDivergenceWithTrace) {
  const SampleFn f = builtin_fn("exp_square", 1, R1);
  IterationConfig c = cfg(Target::quadratic, Direction::grow);
  try {
    approximant(f, c, XPoint{2});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.component(), "quadratic");
    EXPECT_FALSE(e.partial().trace.empty());
    EXPECT_FALSE(e.partial().trace.back().is_finite());
  }
}

TEST(Homogeneity, ExactAndPerturbed) {
  const SampleFn exact = to_sample_fn(PolySolution{1, 1});
  for (auto t : {Target::quadratic, Target::quartic}) {
    const auto a = approximant(exact, cfg(t, Direction::grow), XPoint{0.75});
    const auto b = approximant(exact, cfg(t, Direction::grow), XPoint{1.5});
    EXPECT_EQ(homogeneity_check(R1, a, b, t), 0.0);
  }
  const SampleFn f = make_perturbed(exact, {1e-3, NoiseShape::bounded_oscillation, 7});
  const auto a = approximant(f, cfg(Target::quadratic, Direction::grow), XPoint{0.75});
  const auto b = approximant(f, cfg(Target::quadratic, Direction::grow), XPoint{1.5});
  EXPECT_LE(homogeneity_check(R1, a, b, Target::quadratic), 1e-2);
}

TEST(Homogeneity, Preconditions) {
  const SampleFn exact = to_sample_fn(PolySolution{1, 1});
  const auto a = approximant(exact, cfg(Target::quadratic, Direction::grow), XPoint{0.75});
  const auto c = approximant(exact, cfg(Target::quadratic, Direction::grow), XPoint{1.25});
  EXPECT_THROW(homogeneity_check(R1, a, c, Target::quadratic), PreconditionError);
  const SampleFn f = make_perturbed(exact, {1e-3, NoiseShape::bounded_oscillation, 7});
  IterationConfig tight = cfg(Target::quadratic, Direction::grow);
  tight.m_max = 2;
  const auto u = approximant(f, tight, XPoint{0.75});
  const auto v = approximant(f, tight, XPoint{1.5});
  ASSERT_FALSE(u.converged);
  EXPECT_THROW(homogeneity_check(R1, u, v, Target::quadratic), PreconditionError);
}

TEST(MixedDecomposition, Examples) {
  const IterationConfig c = cfg(Target::quadratic, Direction::grow);
  auto m = mixed_decomposition(to_sample_fn(PolySolution{1, 1}), c, c, XPoint{1});
  EXPECT_EQ(d0(m.quadratic), 1.0);
  EXPECT_EQ(d0(m.quartic), 1.0);
  m = mixed_decomposition(builtin_fn("zero", 1, R1), c, c, XPoint{1});
  EXPECT_EQ(d0(m.quadratic), 0.0);
  EXPECT_EQ(d0(m.quartic), 0.0);
  m = mixed_decomposition(to_sample_fn(PolySolution{3, -2}), c, c, XPoint{2});
  EXPECT_EQ(d0(m.quadratic), -8.0);
  EXPECT_EQ(d0(m.quartic), 48.0);
  EXPECT_EQ(d0(m.quadratic + m.quartic), 40.0);
}

TEST(MixedDecomposition, ReconstructionOnGridBothDirections) {
  const auto grid = make_grid({});
  for (auto [a, b] : {std::pair{1.0, 1.0}, {3.0, -2.0}, {0.0, 1.0}, {1.0, 0.0}}) {
    const SampleFn f = to_sample_fn(PolySolution{Real(a), Real(b)});
    for (auto dir : {Direction::shrink, Direction::grow}) {
      const IterationConfig c = cfg(Target::quadratic, dir);
      for (const auto& x : grid) {
        const auto m = mixed_decomposition(f, c, c, x);
        EXPECT_TRUE(testsupport::rel_close(d0(m.quadratic + m.quartic), d0(f(x)), 1e-10));
      }
    }
  }
}

TEST(MixedDecomposition, NamesTheFailingComponent) {
  const SampleFn f = make_perturbed(make_exact(1, 1), {1e-3, NoiseShape::bounded_oscillation, 7});
  IterationConfig q = cfg(Target::quadratic, Direction::grow);
  IterationConfig t = q;
  t.m_max = 2;
  try {
    mixed_decomposition(f, q, t, XPoint{1.25});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.component(), "quartic");
  }
}

TEST(Uniqueness, DifferentAdmissibleConfigsAgree) {
  const SampleFn f = make_perturbed(make_exact(1, 1), {1e-3, NoiseShape::bounded_oscillation, 7});
  IterationConfig a = cfg(Target::quadratic, Direction::grow);
  IterationConfig b = a;
  b.tol = 1e-12;
  b.m_max = 40;
  for (double xv : testsupport::default_axis()) {
    const auto ra = approximant(f, a, XPoint{xv});
    const auto rb = approximant(f, b, XPoint{xv});
    ASSERT_TRUE(ra.converged && rb.converged);
    // hashed noise: distance to the limit after m steps is at most (85/3) eps 4^-m
    const double lim = 85.0 / 3.0 * 1e-3 * (std::ldexp(1.0, -2 * ra.m_used) + std::ldexp(1.0, -2 * rb.m_used));
    EXPECT_LE(std::abs(d0(ra.value) - d0(rb.value)), lim);
    EXPECT_LT(std::abs(d0(ra.value) - d0(rb.value)), 1e-8);
  }
}
