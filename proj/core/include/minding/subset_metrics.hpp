#pragma once

// Product metrics e^{2a(x)} dx² + e^{2b(y)} dy² realized as subsets of the
// flat plane through arclength coordinates u(x) = ∫₀^x e^{a}, v(y) = ∫₀^y e^{b}.

#include <functional>
#include <limits>
#include <utility>

#include "minding/contour_integral.hpp"
#include "minding/types.hpp"

namespace minding {

using RealFunction = std::function<double(double)>;

/// Closed-form bounds; either end may be ±infinity.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool bounded() const noexcept;
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
};

struct ProductMetricSpec {
    RealFunction a;
    RealFunction b;
    Interval x_range{};
    Interval y_range{};
};

/// A side length of the embedded rectangle; `unbounded` marks a divergent integral.
struct SideLength {
    double value = 0.0;
    bool unbounded = false;
};

/// ∫_from^to e^{a(t)} dt; either limit may be infinite. Improper tails are
/// compactified with t = s / (1 - s) and summed panel by panel until a
/// panel contributes less than abs_tol. Throws DivergenceError otherwise.
double arclength(const RealFunction& a, double from, double to, const QuadratureConfig& cfg = {});

/// (u(x), v(y)), arclength measured from 0.
Point2 embed_product(const ProductMetricSpec& spec, Point2 p, const QuadratureConfig& cfg = {});

/// Side lengths of the open rectangle that is the image of the embedding.
std::pair<SideLength, SideLength> image_side_lengths(const ProductMetricSpec& spec, const QuadratureConfig& cfg = {});

/// a = b = -t² over the whole plane: the metric e^{-2x²} dx² + e^{-2y²} dy².
ProductMetricSpec gaussian_product_metric();

/// a = b = 0 over the given ranges (the flat metric restricted).
ProductMetricSpec flat_product_metric(Interval x_range, Interval y_range);

}  // namespace minding
