#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "minding/complex_expr.hpp"
#include "minding/conformal_core.hpp"
#include "minding/errors.hpp"
#include "minding/geometry_check.hpp"
#include "minding/verification.hpp"

using namespace minding;

namespace {

ConstructionConfig config_at(Complex z0 = {0.0, 0.0}, double radius = 1.0) {
    ConstructionConfig cfg;
    cfg.basepoint = z0;
    cfg.initial_radius = radius;
    return cfg;
}

// Largest r with max over a dense circle of |e^z - 1| <= 1/2, by bisection on
// the closed form. Independent of the quadrature path.
double exp_minus_one_radius_oracle() {
    auto admissible = [](double r) {
        for (int k = 0; k < 4096; ++k) {
            if (std::abs(std::exp(std::polar(r, 2.0 * std::numbers::pi * k / 4096)) - 1.0) > 0.5) return false;
        }
        return true;
    };
    double lo = 0.1;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TEST(ConstructionConfig, Validation) {
    EXPECT_NO_THROW(config_at().validate());
    ConstructionConfig bad = config_at();
    bad.initial_radius = 0.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = config_at();
    bad.boundary_samples = 15;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ChooseConstant, NormalizesToOne) {
    EXPECT_EQ(choose_constant(parse("z"), config_at()), Complex(1.0, 0.0));
    EXPECT_EQ(choose_constant(parse("0"), config_at()), Complex(1.0, 0.0));
    EXPECT_EQ(choose_constant(parse("z"), config_at({1.0, 0.0})), Complex(1.0, 0.0));
}

TEST(ChooseConstant, RequiresEvaluableBasepoint) {
    EXPECT_THROW(choose_constant(parse("1/z"), config_at()), EvaluationError);
}

TEST(ValidateDomain, TranslationCase) {
    // |h + C - 1| = |z| exactly, so the admissible radius is 1/2.
    const Disc d = validate_domain(parse("0"), {1.0, 0.0}, config_at());
    EXPECT_EQ(d.center, Complex(0.0, 0.0));
    EXPECT_LE(d.radius, 0.5);
    EXPECT_GE(d.radius, 0.5 / 1.01);
}

TEST(ValidateDomain, IdentityCaseMatchesDenseSamplingOracle) {
    const double oracle = exp_minus_one_radius_oracle();
    EXPECT_NEAR(oracle, std::log(1.5), 1e-9);
    const Disc d = validate_domain(parse("z"), {1.0, 0.0}, config_at());
    EXPECT_GE(d.radius, 0.38);
    EXPECT_LE(d.radius, 0.41);
    EXPECT_LE(d.radius, oracle * (1.0 + 1e-12));
    EXPECT_GE(d.radius, oracle / 1.01 - 1e-12);
}

TEST(ValidateDomain, TinyInitialRadiusIsKept) {
    const Disc d = validate_domain(parse("z"), {1.0, 0.0}, config_at({0.0, 0.0}, 1e-9));
    EXPECT_EQ(d.radius, 1e-9);
}

TEST(ValidateDomain, ViolentGrowthFails) {
    // |e^f| = e^50: the admissible radius (~1e-22) is far below the floor.
    EXPECT_THROW(validate_domain(parse("50"), {1.0, 0.0}, config_at()), DomainError);
}

TEST(ValidateDomain, AdmissibleOnWholeClosedDisc) {
    const Expr f = parse("sin(z)/2 + z^2");
    const ConstructionConfig cfg = config_at({0.2, -0.1});
    const Complex C = choose_constant(f, cfg);
    const Disc d = validate_domain(f, C, cfg);
    for (int ring = 1; ring <= 5; ++ring) {
        for (int k = 0; k < 97; ++k) {
            const Complex z = d.center + std::polar(d.radius * ring / 5.0, 2.0 * std::numbers::pi * k / 97.0);
            const Complex w = integrate_exp_f(f, d.center, z) + C;
            EXPECT_LE(std::abs(w - 1.0), 0.5 + 1e-9);
            EXPECT_GT(w.real(), 0.0);
        }
    }
}

TEST(BuildG, IdentityCase) {
    const Disc d = validate_domain(parse("z"), {1.0, 0.0}, config_at());
    const Complex g = build_g(parse("z"), {1.0, 0.0}, d, {0.3, 0.0});
    EXPECT_NEAR(g.real(), 0.3, 1e-14);
    EXPECT_NEAR(g.imag(), 0.0, 1e-15);
}

TEST(BuildG, VanishesAtBasepoint) {
    for (const char* source : {"z", "0", "z^2/4", "sin(z)/2", "exp(z) - 1"}) {
        const Expr f = parse(source);
        const ConstructionConfig cfg = config_at({0.1, 0.2});
        const ConstructionResult r = construct_isometry(f, cfg);
        EXPECT_EQ(build_g(f, r.constant(), r.domain(), cfg.basepoint), Complex(0.0, 0.0)) << source;
        EXPECT_EQ(r.g(cfg.basepoint), Complex(0.0, 0.0)) << source;
        const Point2 w = r.isometry(to_point(cfg.basepoint));
        EXPECT_EQ(w.x, 1.0) << source;
        EXPECT_EQ(w.y, 0.0) << source;
    }
}

TEST(BuildG, TranslationCaseMatchesPrincipalLog) {
    // log(1.2 + 0.1i) = (log(1.44 + 0.01) / 2, atan2(0.1, 1.2))
    const double re = 0.5 * std::log(1.45);
    const double im = std::atan2(0.1, 1.2);
    EXPECT_NEAR(re, 0.185782, 1e-6);
    EXPECT_NEAR(im, 0.083141, 1e-6);
    const Disc d{{0.0, 0.0}, 0.5};
    const Complex g = build_g(parse("0"), {1.0, 0.0}, d, {0.2, 0.1});
    EXPECT_NEAR(g.real(), re, 1e-15);
    EXPECT_NEAR(g.imag(), im, 1e-15);
}

TEST(BuildG, RefusesPointsOutsideDomain) {
    const Disc d{{0.0, 0.0}, 0.5};
    EXPECT_THROW(build_g(parse("0"), {1.0, 0.0}, d, {0.6, 0.0}), DomainError);
}

TEST(Construct, IdentityFunctionGivesCartesianPotential) {
    const ConstructionResult r = construct_isometry(parse("z"), config_at());
    EXPECT_EQ(r.constant(), Complex(1.0, 0.0));
    const Grid2D grid = domain_grid(r.domain(), 9, 9, 0.0);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const Point2 p = grid.at(i, j);
            EXPECT_NEAR(r.phi(p), p.x, 1e-14);
            EXPECT_NEAR(r.psi(p), p.y, 1e-14);
            EXPECT_NEAR(identity_residual(r, p), 0.0, 1e-14);
        }
    }
}

TEST(Construct, TranslationCaseGradientIdentity) {
    const ConstructionResult r = construct_isometry(parse("0"), config_at());
    for (const Point2 p : {Point2{0.1, 0.2}, Point2{-0.3, 0.1}, Point2{0.0, -0.25}}) {
        const Complex w = to_complex(p) + 1.0;
        EXPECT_NEAR(r.phi(p), std::log(std::abs(w)), 1e-15);
        EXPECT_NEAR(std::abs(r.g_prime(to_complex(p))), 1.0 / std::abs(w), 1e-15);
        EXPECT_NEAR(identity_residual(r, p), 0.0, 1e-15);
    }
}

TEST(Construct, QuarterSquareIdentityOnGrid) {
    const ConstructionResult r = construct_isometry(parse("z^2/4"), config_at());
    const Grid2D grid = domain_grid(r.domain(), 21, 21, 0.0);
    EXPECT_LE(max_abs_over_grid(grid, [&](Point2 p) { return identity_residual(r, p); }), 1e-8);
}

TEST(Construct, FiniteDifferenceIdentityConvergesQuadratically) {
    const ConstructionResult r = construct_isometry(parse("z^2/4"), config_at());
    const Point2 p{0.2, -0.15};
    const double e1 = identity_residual_fd(r, p, 1e-2);
    const double e2 = identity_residual_fd(r, p, 5e-3);
    EXPECT_LT(e1, 1e-4);
    EXPECT_GT(e1 / e2, 3.5);
    EXPECT_LT(e1 / e2, 4.5);
}

TEST(Construct, CauchyRiemannResidualsConvergeQuadratically) {
    const ConstructionResult r = construct_isometry(parse("sin(z)/2"), config_at());
    const Point2 p{0.15, 0.2};
    const double e1 = cauchy_riemann_residual(r, p, 2e-2);
    const double e2 = cauchy_riemann_residual(r, p, 1e-2);
    EXPECT_GT(e1 / e2, 3.5);
    EXPECT_LT(e1 / e2, 4.5);
}

TEST(Construct, GradientNeverVanishes) {
    for (const char* source : {"z", "0", "z^2/4", "sin(z)/2"}) {
        const ConstructionResult r = construct_isometry(parse(source), config_at());
        const Grid2D grid = domain_grid(r.domain(), 11, 11, 0.0);
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const Point2 p = grid.at(i, j);
                const double norm = std::abs(r.g_prime(to_complex(p)));
                EXPECT_GT(norm, 0.0);
                EXPECT_NEAR(norm, std::exp(r.conformal_exponent(p) - r.phi(p)), 1e-13 * norm);
            }
        }
    }
}

TEST(Construct, DualRouteAgreement) {
    for (const char* source : {"z", "0", "z^2/4", "sin(z)/2", "cos(z) + i*z"}) {
        const ConstructionResult r = construct_isometry(parse(source), config_at({0.3, -0.2}));
        const Grid2D grid = domain_grid(r.domain(), 21, 21, 0.0);
        const double worst = max_abs_over_grid(grid, [&](Point2 p) {
            const Point2 a = r.isometry(p);
            const Point2 b = r.isometry_direct(p);
            return std::hypot(a.x - b.x, a.y - b.y);
        });
        EXPECT_LE(worst, 1e-10) << source;
    }
}

TEST(Isometry, Examples) {
    const ConstructionResult id = construct_isometry(parse("z"), config_at());
    const Point2 origin = id.isometry({0.0, 0.0});
    EXPECT_EQ(origin.x, 1.0);
    EXPECT_EQ(origin.y, 0.0);

    const Point2 w = id.isometry({0.1, 0.2});
    const double ex = std::exp(0.1) * std::cos(0.2);
    const double ey = std::exp(0.1) * std::sin(0.2);
    EXPECT_NEAR(ex, 1.083141, 1e-6);
    EXPECT_NEAR(ey, 0.219564, 1e-6);
    EXPECT_NEAR(w.x, ex, 1e-14);
    EXPECT_NEAR(w.y, ey, 1e-14);

    const ConstructionResult translation = construct_isometry(parse("0"), config_at());
    for (const Point2 p : {Point2{0.1, 0.2}, Point2{-0.3, -0.3}, Point2{0.4, 0.0}}) {
        const Point2 t = translation.isometry(p);
        EXPECT_NEAR(t.x, p.x + 1.0, 1e-15);
        EXPECT_NEAR(t.y, p.y, 1e-15);
    }
}

TEST(Isometry, OutsideDomainThrows) {
    const ConstructionResult r = construct_isometry(parse("z"), config_at());
    EXPECT_THROW(r.isometry({1.0, 0.0}), DomainError);
    EXPECT_THROW(r.phi({0.0, 0.9}), DomainError);
    EXPECT_THROW(r.h({-0.5, -0.5}), DomainError);
}
