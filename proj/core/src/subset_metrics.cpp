#include "minding/subset_metrics.hpp"

#include <cmath>
#include <string>

#include "minding/errors.hpp"

namespace minding {

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

namespace {

constexpr int kMaxTailPanels = 60;

double finite_integral(const RealFunction& a, double from, double to, const QuadratureConfig& cfg) {
    const ParamIntegrand integrand = [&a](double t) { return Complex{std::exp(a(t)), 0.0}; };
    return integrate_adaptive(integrand, from, to, cfg).value.real();
}

// ∫_from^∞ e^{a}. Under t = from + s / (1 - s) the dyadic panels
// s in [1 - 2^-k, 1 - 2^-(k+1)] map to t in [from + 2^k - 1, from + 2^(k+1) - 1];
// those images are integrated directly to avoid cancellation near s = 1.
double tail_integral(const RealFunction& a, double from, const QuadratureConfig& cfg) {
    double total = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kMaxTailPanels; ++k) {
        const double lo = from + (std::ldexp(1.0, k) - 1.0);
        const double hi = from + (std::ldexp(1.0, k + 1) - 1.0);
        double panel = 0.0;
        try {
            panel = finite_integral(a, lo, hi, cfg);
        } catch (const Error&) {
            throw DivergenceError("integrand is not integrable on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        if (!std::isfinite(panel)) throw DivergenceError("tail panel is not finite");
        total += panel;
        if (std::abs(panel) < cfg.abs_tol && std::abs(panel) <= previous) return total;
        previous = std::abs(panel);
    }
    throw DivergenceError("improper integral does not converge: tail panels stay above abs_tol");
}

}  // namespace

double arclength(const RealFunction& a, double from, double to, const QuadratureConfig& cfg) {
    cfg.validate();
    if (std::isnan(from) || std::isnan(to)) throw std::invalid_argument("arclength limits must not be NaN");
    if (from == to) return 0.0;
    if (from > to) return -arclength(a, to, from, cfg);

    if (std::isfinite(from) && std::isfinite(to)) return finite_integral(a, from, to, cfg);

    const RealFunction reflected = [&a](double t) { return a(-t); };
    if (std::isfinite(from)) return tail_integral(a, from, cfg);        // [from, ∞)
    if (std::isfinite(to)) return tail_integral(reflected, -to, cfg);   // (-∞, to]
    return tail_integral(reflected, 0.0, cfg) + tail_integral(a, 0.0, cfg);
}

Point2 embed_product(const ProductMetricSpec& spec, Point2 p, const QuadratureConfig& cfg) {
    if (!spec.x_range.contains(p.x) || !spec.y_range.contains(p.y)) {
        throw DomainError("point lies outside the product metric's ranges");
    }
    return {arclength(spec.a, 0.0, p.x, cfg), arclength(spec.b, 0.0, p.y, cfg)};
}

std::pair<SideLength, SideLength> image_side_lengths(const ProductMetricSpec& spec, const QuadratureConfig& cfg) {
    auto side = [&cfg](const RealFunction& fn, const Interval& range) -> SideLength {
        try {
            return {arclength(fn, range.lo, range.hi, cfg), false};
        } catch (const DivergenceError&) {
            return {std::numeric_limits<double>::infinity(), true};
        }
    };
    return {side(spec.a, spec.x_range), side(spec.b, spec.y_range)};
}

ProductMetricSpec gaussian_product_metric() {
    const RealFunction gaussian = [](double t) { return -t * t; };
    return {gaussian, gaussian, Interval{}, Interval{}};
}

ProductMetricSpec flat_product_metric(Interval x_range, Interval y_range) {
    const RealFunction zero = [](double) { return 0.0; };
    return {zero, zero, x_range, y_range};
}

}  // namespace minding
