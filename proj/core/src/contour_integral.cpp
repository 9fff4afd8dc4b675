#include "minding/contour_integral.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "minding/errors.hpp"

namespace minding {

void Disc::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("Disc radius must be positive and finite");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
        throw std::invalid_argument("Disc center must be finite");
    }
}

bool Disc::contains(Complex z) const noexcept {
    return std::abs(z - center) <= radius * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be at least 1");
}

namespace {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half) and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct PanelEstimate {
    Complex kronrod;
    double error;
    double roundoff_scale;  // ∫|integrand|, for the roundoff floor
};

PanelEstimate gauss_kronrod_15(const ParamIntegrand& fn, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Complex kronrod{0.0, 0.0};
    Complex gauss{0.0, 0.0};
    double abs_sum = 0.0;
    for (std::size_t k = 0; k < kKronrodNodes.size(); ++k) {
        const double dx = half * kKronrodNodes[k];
        Complex pair;
        if (k + 1 == kKronrodNodes.size()) {
            pair = fn(mid);
        } else {
            pair = fn(mid - dx) + fn(mid + dx);
        }
        kronrod += kKronrodWeights[k] * pair;
        abs_sum += kKronrodWeights[k] * std::abs(pair);
        if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

struct Interval {
    double a;
    double b;
    PanelEstimate est;
};

}  // namespace

QuadratureResult integrate_adaptive(const ParamIntegrand& integrand, double a, double b,
                                    const QuadratureConfig& cfg) {
    cfg.validate();
    if (a == b) return {};
    const double total_length = std::abs(b - a);
    const PanelEstimate whole = gauss_kronrod_15(integrand, a, b);
    const double tol_total = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole.kronrod));
    constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

    QuadratureResult result;
    std::vector<Interval> stack;
    stack.push_back({a, b, whole});
    int subdivisions = 0;

    while (!stack.empty()) {
        Interval cur = stack.back();
        stack.pop_back();
        const double share = tol_total * std::abs(cur.b - cur.a) / total_length;
        const bool converged = cur.est.error <= share || cur.est.error <= kRoundoff * cur.est.roundoff_scale;
        if (converged) {
            result.value += cur.est.kronrod;
            result.error_estimate += cur.est.error;
            continue;
        }
        const double mid = 0.5 * (cur.a + cur.b);
        const bool too_narrow = mid == cur.a || mid == cur.b;
        if (too_narrow || subdivisions >= cfg.max_subdivisions) {
            Complex best = result.value + cur.est.kronrod;
            double bound = result.error_estimate + cur.est.error;
            for (const Interval& pending : stack) {
                best += pending.est.kronrod;
                bound += pending.est.error;
            }
            throw QuadratureError("quadrature tolerance not reached within " + std::to_string(cfg.max_subdivisions) +
                                      " subdivisions (error bound " + std::to_string(bound) + ")",
                                  best, bound);
        }
        ++subdivisions;
        // Right half pushed first so the left half is processed first.
        stack.push_back({mid, cur.b, gauss_kronrod_15(integrand, mid, cur.b)});
        stack.push_back({cur.a, mid, gauss_kronrod_15(integrand, cur.a, mid)});
    }
    result.subdivisions = subdivisions;
    return result;
}

namespace {

ParamIntegrand segment_integrand(const Expr& f, Complex from, Complex to) {
    const Complex delta = to - from;
    return [&f, from, delta](double t) {
        const Complex value = std::exp(f.evaluate(from + t * delta)) * delta;
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw EvaluationError("exp overflow", "exp(" + f.to_string() + ")");
        }
        return value;
    };
}

}  // namespace

QuadratureResult integrate_exp_f_detailed(const Expr& f, Complex from, Complex to, const QuadratureConfig& cfg) {
    if (from == to) {
        cfg.validate();
        return {};
    }
    return integrate_adaptive(segment_integrand(f, from, to), 0.0, 1.0, cfg);
}

Complex integrate_exp_f(const Expr& f, Complex from, Complex to, const QuadratureConfig& cfg) {
    return integrate_exp_f_detailed(f, from, to, cfg).value;
}

Complex integrate_along_polyline(const Expr& f, std::span<const Complex> vertices, const QuadratureConfig& cfg) {
    Complex total{0.0, 0.0};
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        total += integrate_exp_f(f, vertices[k - 1], vertices[k], cfg);
    }
    return total;
}

int convergence_order(GaussRule rule) noexcept { return rule == GaussRule::Points2 ? 4 : 14; }

Complex integrate_exp_f_fixed(const Expr& f, Complex from, Complex to, int panels, GaussRule rule) {
    if (panels < 1) throw std::invalid_argument("panels must be at least 1");
    static constexpr std::array<double, 1> kNodes2 = {0.577350269189625764509148780501957};
    static constexpr std::array<double, 1> kWeights2 = {1.0};
    const auto integrand = segment_integrand(f, from, to);
    const double width = 1.0 / panels;
    Complex total{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        const double half = 0.5 * width;
        Complex panel{0.0, 0.0};
        if (rule == GaussRule::Points2) {
            for (std::size_t k = 0; k < kNodes2.size(); ++k) {
                panel += kWeights2[k] * (integrand(mid - half * kNodes2[k]) + integrand(mid + half * kNodes2[k]));
            }
        } else {
            // The 7-point Gauss rule is embedded in the Kronrod node set.
            for (std::size_t k = 1; k < kKronrodNodes.size(); k += 2) {
                const double dx = half * kKronrodNodes[k];
                const Complex pair = k + 1 == kKronrodNodes.size() ? integrand(mid) : integrand(mid - dx) + integrand(mid + dx);
                panel += kGaussWeights[k / 2] * pair;
            }
        }
        total += panel * half;
    }
    return total;
}

}  // namespace minding
