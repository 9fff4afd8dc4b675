#pragma once

// Line integrals of e^{f} along straight segments and polylines.
//
// The engine is an adaptive Gauss-Kronrod (7/15) rule on the unit parameter
// interval with depth-first bisection, left half before right half, so the
// result for a fixed configuration is bit-for-bit reproducible.

#include <functional>
#include <span>

#include "minding/complex_expr.hpp"
#include "minding/types.hpp"

namespace minding {

/// Open disc {z : |z - center| < radius}. Star-shaped about its center.
struct Disc {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    /// Throws std::invalid_argument unless radius > 0 and finite.
    void validate() const;
    /// Closed-disc membership, with a relative slack of a few ulps so that
    /// points sampled exactly on the boundary circle count as inside.
    bool contains(Complex z) const noexcept;
};

struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_subdivisions = 1 << 16;

    /// Throws std::invalid_argument unless both tolerances are positive and
    /// max_subdivisions >= 1.
    void validate() const;
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    int subdivisions = 0;
};

using ParamIntegrand = std::function<Complex(double)>;

/// Adaptive integral of `integrand` over [a, b]. The returned error estimate
/// is at most max(abs_tol, rel_tol * |value|) up to the difference between
/// the first coarse estimate and the final value. Throws QuadratureError
/// with the best estimate when max_subdivisions is exhausted.
QuadratureResult integrate_adaptive(const ParamIntegrand& integrand, double a, double b,
                                    const QuadratureConfig& cfg = {});

/// ∫ e^{f(ξ)} dξ over the segment ξ(t) = from + t (to - from), t in [0, 1].
Complex integrate_exp_f(const Expr& f, Complex from, Complex to, const QuadratureConfig& cfg = {});

/// Same as integrate_exp_f but also reports the error estimate.
QuadratureResult integrate_exp_f_detailed(const Expr& f, Complex from, Complex to,
                                          const QuadratureConfig& cfg = {});

/// Sum of segment integrals in vertex order. Fewer than two vertices give 0.
Complex integrate_along_polyline(const Expr& f, std::span<const Complex> vertices,
                                 const QuadratureConfig& cfg = {});

/// Fixed composite Gauss-Legendre rules, used to check convergence order.
enum class GaussRule { Points2, Points7 };

/// Order of accuracy (error ~ panel_width^order) of a composite rule.
int convergence_order(GaussRule rule) noexcept;

/// ∫ e^{f} over the segment using `panels` equal panels of `rule`.
Complex integrate_exp_f_fixed(const Expr& f, Complex from, Complex to, int panels, GaussRule rule);

}  // namespace minding
