#include "minding/conformal_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "minding/errors.hpp"

namespace minding {

void ConstructionConfig::validate() const {
    if (!(initial_radius > 0.0) || !std::isfinite(initial_radius)) {
        throw std::invalid_argument("initial_radius must be positive and finite");
    }
    if (boundary_samples < 16) throw std::invalid_argument("boundary_samples must be at least 16");
    if (!std::isfinite(basepoint.real()) || !std::isfinite(basepoint.imag())) {
        throw std::invalid_argument("basepoint must be finite");
    }
    quadrature.validate();
}

Complex choose_constant(const Expr& f, const ConstructionConfig& cfg) {
    cfg.validate();
    (void)f.evaluate(cfg.basepoint);
    const Complex h0 = integrate_exp_f(f, cfg.basepoint, cfg.basepoint, cfg.quadrature);
    return Complex{1.0, 0.0} - h0;
}

namespace {

bool circle_admissible(const Expr& f, Complex C, const ConstructionConfig& cfg, double radius) {
    const int n = cfg.boundary_samples;
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const Complex z = cfg.basepoint + std::polar(radius, theta);
        try {
            const Complex w = integrate_exp_f(f, cfg.basepoint, z, cfg.quadrature) + C;
            if (std::abs(w - 1.0) > 0.5) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

}  // namespace

Disc validate_domain(const Expr& f, Complex C, const ConstructionConfig& cfg) {
    cfg.validate();
    const double floor = 1e-6 * cfg.initial_radius;
    double hi = cfg.initial_radius;
    if (circle_admissible(f, C, cfg, hi)) return {cfg.basepoint, hi};

    double lo = 0.5 * hi;
    while (!circle_admissible(f, C, cfg, lo)) {
        hi = lo;
        lo *= 0.5;
        if (lo < floor) {
            throw DomainError("no admissible radius above " + std::to_string(floor) +
                              "; e^f grows too quickly near the basepoint");
        }
    }
    // Max |h| over circles is nondecreasing in the radius, so bisection is sound.
    while (hi - lo > 0.01 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (circle_admissible(f, C, cfg, mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {cfg.basepoint, lo};
}

Complex build_g(const Expr& f, Complex C, const Disc& domain, Complex z, const QuadratureConfig& quadrature) {
    if (!domain.contains(z)) throw DomainError("point lies outside the validated disc");
    return std::log(integrate_exp_f(f, domain.center, z, quadrature) + C);
}

ConstructionResult::ConstructionResult(Expr f, Complex constant, Disc domain, QuadratureConfig quadrature)
    : f_(std::move(f)), constant_(constant), domain_(domain), quadrature_(quadrature) {
    domain_.validate();
    quadrature_.validate();
}

void ConstructionResult::require_inside(Complex z) const {
    if (!domain_.contains(z)) throw DomainError("point lies outside the validated disc");
}

Complex ConstructionResult::h(Complex z) const {
    require_inside(z);
    return integrate_exp_f(f_, domain_.center, z, quadrature_);
}

Complex ConstructionResult::g(Complex z) const { return std::log(h(z) + constant_); }

Complex ConstructionResult::g_prime(Complex z) const { return std::exp(f_.evaluate(z) - g(z)); }

double ConstructionResult::phi(Point2 p) const { return g(to_complex(p)).real(); }

double ConstructionResult::psi(Point2 p) const { return g(to_complex(p)).imag(); }

double ConstructionResult::conformal_exponent(Point2 p) const { return real_part_field(f_, p); }

Point2 ConstructionResult::isometry(Point2 p) const {
    const Complex gz = g(to_complex(p));
    const double scale = std::exp(gz.real());
    return {scale * std::cos(gz.imag()), scale * std::sin(gz.imag())};
}

Point2 ConstructionResult::isometry_direct(Point2 p) const { return to_point(h(to_complex(p)) + constant_); }

ConstructionResult construct_isometry(const Expr& f, const ConstructionConfig& cfg) {
    const Complex C = choose_constant(f, cfg);
    const Disc domain = validate_domain(f, C, cfg);
    return ConstructionResult(f, C, domain, cfg.quadrature);
}

}  // namespace minding
