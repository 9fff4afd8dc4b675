#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "minding/complex_expr.hpp"
#include "minding/contour_integral.hpp"
#include "minding/errors.hpp"

using namespace minding;

namespace {

double tolerance_for(const QuadratureConfig& cfg, Complex value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// ∫₀¹ e^{t²} dt = Σ 1 / (n! (2n + 1)), summed until the terms vanish.
double exp_square_series() {
    double sum = 0.0;
    double factorial = 1.0;
    for (int n = 0; n < 40; ++n) {
        if (n > 0) factorial *= n;
        sum += 1.0 / (factorial * (2 * n + 1));
    }
    return sum;
}

}  // namespace

TEST(Disc, ValidationAndMembership) {
    EXPECT_THROW((Disc{{0.0, 0.0}, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((Disc{{0.0, 0.0}, -1.0}).validate(), std::invalid_argument);
    const Disc d{{1.0, 1.0}, 0.5};
    EXPECT_NO_THROW(d.validate());
    EXPECT_TRUE(d.contains({1.0, 1.0}));
    EXPECT_TRUE(d.contains(Complex{1.0, 1.0} + std::polar(0.5, 0.7)));
    EXPECT_FALSE(d.contains({1.6, 1.0}));
}

TEST(QuadratureConfig, Validation) {
    EXPECT_NO_THROW(QuadratureConfig{}.validate());
    EXPECT_THROW((QuadratureConfig{0.0, 1e-14, 10}).validate(), std::invalid_argument);
    EXPECT_THROW((QuadratureConfig{1e-12, -1.0, 10}).validate(), std::invalid_argument);
    EXPECT_THROW((QuadratureConfig{1e-12, 1e-14, 0}).validate(), std::invalid_argument);
}

TEST(IntegrateExpF, ConstantIntegrandGivesDisplacement) {
    const Expr f = parse("0");
    for (Complex z : {Complex{1.0, 0.0}, Complex{-0.3, 0.8}, Complex{2.0, -2.0}}) {
        const Complex got = integrate_exp_f(f, {0.0, 0.0}, z);
        EXPECT_NEAR(got.real(), z.real(), 1e-15);
        EXPECT_NEAR(got.imag(), z.imag(), 1e-15);
    }
}

TEST(IntegrateExpF, IdentityMatchesAntiderivative) {
    const Complex got = integrate_exp_f(parse("z"), {0.0, 0.0}, {1.0, 0.0});
    EXPECT_NEAR(got.real(), std::numbers::e - 1.0, 1e-14);
    EXPECT_NEAR(got.real(), 1.718281828, 1e-9);
    EXPECT_NEAR(got.imag(), 0.0, 1e-15);
}

TEST(IntegrateExpF, SquareMatchesTaylorSeries) {
    const double oracle = exp_square_series();
    EXPECT_NEAR(oracle, 1.4626517459, 1e-10);
    const auto r = integrate_exp_f_detailed(parse("z^2"), {0.0, 0.0}, {1.0, 0.0});
    EXPECT_NEAR(r.value.real(), oracle, 1e-13);
    EXPECT_LE(r.error_estimate, tolerance_for(QuadratureConfig{}, r.value) * (1.0 + 1e-9));
}

TEST(IntegrateExpF, DegenerateSegmentIsZero) {
    EXPECT_EQ(integrate_exp_f(parse("z"), {0.4, 0.1}, {0.4, 0.1}), Complex(0.0, 0.0));
}

TEST(IntegrateExpF, ReportsExhaustedSubdivisions) {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 1;
    // Highly oscillatory along the segment, so one bisection cannot meet 1e-12.
    try {
        integrate_exp_f(parse("40*i*z"), {0.0, 0.0}, {3.0, 0.0}, cfg);
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError& e) {
        const Complex exact = (std::exp(Complex{0.0, 120.0}) - 1.0) / Complex{0.0, 40.0};
        EXPECT_GT(e.error_bound(), 0.0);
        EXPECT_LT(std::abs(e.best_estimate() - exact), 1.0);
    }
}

TEST(IntegrateExpF, PropagatesEvaluationErrors) {
    EXPECT_THROW(integrate_exp_f(parse("1/(z-0.5)"), {0.0, 0.0}, {1.0, 0.0}), EvaluationError);
    EXPECT_THROW(integrate_exp_f(parse("exp(exp(z))"), {0.0, 0.0}, {10.0, 0.0}), EvaluationError);
}

TEST(IntegrateAlongPolyline, Examples) {
    const std::vector<Complex> path{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
    const Complex unit = integrate_along_polyline(parse("0"), path);
    EXPECT_NEAR(unit.real(), 1.0, 1e-15);
    EXPECT_NEAR(unit.imag(), 1.0, 1e-15);

    const Complex closed = std::exp(Complex{1.0, 1.0}) - 1.0;
    const std::vector<Complex> bent{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const std::vector<Complex> straight{{0.0, 0.0}, {1.0, 1.0}};
    EXPECT_LT(std::abs(integrate_along_polyline(parse("z"), bent) - closed), 1e-13);
    EXPECT_LT(std::abs(integrate_along_polyline(parse("z"), straight) - closed), 1e-13);

    const std::vector<Complex> single{{0.0, 0.0}};
    EXPECT_EQ(integrate_along_polyline(parse("z"), single), Complex(0.0, 0.0));
    EXPECT_EQ(integrate_along_polyline(parse("z"), std::span<const Complex>{}), Complex(0.0, 0.0));
}

TEST(Properties, PathIndependenceInsideDisc) {
    const QuadratureConfig cfg;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> r(0.0, 2.0);
    std::uniform_real_distribution<double> t(0.0, 2.0 * std::numbers::pi);
    for (const char* source : {"z", "z^2/4", "sin(z)/2", "exp(z)/3 + i*z", "cos(z^2)"}) {
        const Expr f = parse(source);
        for (int trial = 0; trial < 10; ++trial) {
            const Complex end = std::polar(r(rng), t(rng));
            const std::vector<Complex> a{{0.0, 0.0}, std::polar(r(rng), t(rng)), std::polar(r(rng), t(rng)), end};
            const std::vector<Complex> b{{0.0, 0.0}, std::polar(r(rng), t(rng)), end};
            const Complex ia = integrate_along_polyline(f, a, cfg);
            const Complex ib = integrate_along_polyline(f, b, cfg);
            EXPECT_LE(std::abs(ia - ib), 10.0 * tolerance_for(cfg, ia)) << source;
        }
    }
}

TEST(Properties, AdditivityAndAntisymmetry) {
    const QuadratureConfig cfg;
    const Expr f = parse("sin(z)/2 + z");
    const Complex a{0.1, -0.3};
    const Complex b{0.7, 0.4};
    const Complex c{-0.5, 0.9};
    const Complex ab = integrate_exp_f(f, a, b, cfg);
    const Complex bc = integrate_exp_f(f, b, c, cfg);
    const std::vector<Complex> path{a, b, c};
    EXPECT_EQ(ab + bc, integrate_along_polyline(f, path, cfg));
    const Complex ac = integrate_exp_f(f, a, c, cfg);
    EXPECT_LE(std::abs(ab + bc - ac), 10.0 * tolerance_for(cfg, ac));
    const Complex ba = integrate_exp_f(f, b, a, cfg);
    EXPECT_LE(std::abs(ab + ba), 2.0 * tolerance_for(cfg, ab));
}

TEST(Properties, DeterministicForFixedConfig) {
    const Expr f = parse("cos(3*z) + z^3");
    const Complex first = integrate_exp_f(f, {0.0, 0.0}, {1.5, -0.7});
    for (int k = 0; k < 5; ++k) EXPECT_EQ(integrate_exp_f(f, {0.0, 0.0}, {1.5, -0.7}), first);
}

TEST(Properties, ConvergenceOrderMatchesRule) {
    const Expr f = parse("z");
    // Two-point Gauss: order 4, halving panels divides the error by 16.
    {
        const Complex from{0.0, 0.0};
        const Complex to{2.0, 1.0};
        const Complex exact = std::exp(to) - std::exp(from);
        double previous = 0.0;
        for (int panels = 2; panels <= 32; panels *= 2) {
            const double err = std::abs(integrate_exp_f_fixed(f, from, to, panels, GaussRule::Points2) - exact);
            if (previous > 0.0) {
                const double ratio = previous / err;
                const double expected = std::pow(2.0, convergence_order(GaussRule::Points2));
                EXPECT_GT(ratio, 0.85 * expected) << panels;
                EXPECT_LT(ratio, 1.15 * expected) << panels;
            }
            previous = err;
        }
    }
    // Seven-point Gauss: the asymptotic ratio 2^14 only appears once the error
    // is below double roundoff, so check for at least 13th-order decay on an
    // oscillatory segment where every error is far above roundoff.
    {
        const Complex from{0.0, 0.0};
        const Complex to{0.0, 16.0};
        const Complex exact = std::exp(to) - std::exp(from);
        double previous = 0.0;
        for (int panels = 1; panels <= 4; panels *= 2) {
            const double err = std::abs(integrate_exp_f_fixed(f, from, to, panels, GaussRule::Points7) - exact);
            EXPECT_GT(err, 1e-12);
            if (previous > 0.0) EXPECT_GT(previous / err, std::pow(2.0, 13)) << panels;
            previous = err;
        }
    }
}
