#pragma once

#include <complex>

namespace minding {

/// The scalar of all analytic computation: z = x + iy.
using Complex = std::complex<double>;

/// A point (or vector) in the real plane.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Complex to_complex(Point2 p) noexcept { return {p.x, p.y}; }
inline Point2 to_point(Complex z) noexcept { return {z.real(), z.imag()}; }

}  // namespace minding
