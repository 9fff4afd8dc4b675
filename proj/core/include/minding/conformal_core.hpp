#pragma once

// Explicit local isometry between the flat plane and the flat conformal
// metric e^{2 Re f} g0.
//
// Given an analytic f, let h(z) = ∫_{z0}^{z} e^{f(ξ)} dξ along the straight
// segment and g = log(h + C). Then g' = e^{f - g}, so with Φ = Re g and
// Ψ = Im g one has Φ + log‖∇Φ‖ = Re f, and the map
//
//     W(x, y) = (e^Φ cos Ψ, e^Φ sin Ψ)
//
// satisfies Jᵀ J = e^{2 Re f} I on the validated disc.

#include "minding/complex_expr.hpp"
#include "minding/contour_integral.hpp"
#include "minding/types.hpp"

namespace minding {

struct ConstructionConfig {
    Complex basepoint{0.0, 0.0};
    /// Radius of the disc about the basepoint within which the domain is searched.
    double initial_radius = 1.0;
    QuadratureConfig quadrature{};
    /// Points per tested circle during domain validation.
    int boundary_samples = 64;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// C := 1 - h(z0), so that h(z0) + C = 1 and g(z0) = 0.
Complex choose_constant(const Expr& f, const ConstructionConfig& cfg);

/// Largest radius r <= initial_radius (to 1% relative precision) such that
/// |h + C - 1| <= 1/2 on every sampled point of the circle of radius r about
/// the basepoint. Since h + C - 1 is analytic, the maximum principle carries
/// the bound to the whole closed disc, keeping h + C in the half-plane
/// Re > 1/2 where the principal log is continuous.
/// Throws DomainError when even 1e-6 * initial_radius fails.
Disc validate_domain(const Expr& f, Complex C, const ConstructionConfig& cfg);

/// Principal log of h(z) + C. Throws DomainError when z is outside `domain`.
Complex build_g(const Expr& f, Complex C, const Disc& domain, Complex z, const QuadratureConfig& quadrature = {});

/// Immutable output of the construction. All evaluators are pure and throw
/// DomainError outside domain().
class ConstructionResult {
public:
    ConstructionResult(Expr f, Complex constant, Disc domain, QuadratureConfig quadrature);

    const Expr& function() const noexcept { return f_; }
    Complex constant() const noexcept { return constant_; }
    const Disc& domain() const noexcept { return domain_; }
    const QuadratureConfig& quadrature() const noexcept { return quadrature_; }

    /// ∫_{z0}^{z} e^{f}.
    Complex h(Complex z) const;
    Complex g(Complex z) const;
    /// Exact derivative of g: e^{f(z) - g(z)}.
    Complex g_prime(Complex z) const;

    /// Φ = Re g.
    double phi(Point2 p) const;
    /// Ψ = Im g, a harmonic conjugate of Φ.
    double psi(Point2 p) const;
    /// φ = Re f, the conformal exponent of the target metric.
    double conformal_exponent(Point2 p) const;

    /// (e^Φ cos Ψ, e^Φ sin Ψ).
    Point2 isometry(Point2 p) const;
    /// h(p) + C as a point; equal to isometry(p) since e^g = h + C.
    Point2 isometry_direct(Point2 p) const;

private:
    void require_inside(Complex z) const;

    Expr f_;
    Complex constant_;
    Disc domain_;
    QuadratureConfig quadrature_;
};

/// Runs choose_constant and validate_domain and bundles the result.
ConstructionResult construct_isometry(const Expr& f, const ConstructionConfig& cfg);

}  // namespace minding
