#pragma once

// Finite-difference verification of the identities behind the construction:
// pullback conformality, curvature of a conformal metric, harmonicity and its
// invariance under conformal change.
//
// Every stencil helper accepts an optional domain. When given, all stencil
// points must lie in it or StencilError is thrown.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "minding/conformal_core.hpp"
#include "minding/contour_integral.hpp"
#include "minding/types.hpp"

namespace minding {

using ScalarField = std::function<double(Point2)>;
using PlanarMap = std::function<Point2(Point2)>;

/// Row-major 2x2 real matrix.
struct Mat2 {
    std::array<double, 4> a{};

    double operator()(int row, int col) const noexcept { return a[static_cast<std::size_t>(2 * row + col)]; }
    double det() const noexcept { return a[0] * a[3] - a[1] * a[2]; }
    /// Mᵀ M, the pulled-back flat metric when M is a Jacobian.
    Mat2 gram() const noexcept;
    /// max |entry|.
    double max_abs() const noexcept;

    friend Mat2 operator-(const Mat2& lhs, const Mat2& rhs) noexcept;
    static Mat2 identity(double scale = 1.0) noexcept { return {{scale, 0.0, 0.0, scale}}; }
};

/// Uniform sample grid; point (i, j) is origin + step (i, j) and values are
/// stored row-major (index j * nx + i).
struct Grid2D {
    Point2 origin{};
    double step = 1.0;
    int nx = 3;
    int ny = 3;

    void validate() const;
    Point2 at(int i, int j) const noexcept { return {origin.x + step * i, origin.y + step * j}; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    /// Grid centered on `center` whose longer side spans `span`.
    static Grid2D centered(Point2 center, double span, int nx, int ny);
    /// True when every sample lies at distance <= radius - margin from the disc center.
    bool inside(const Disc& disc, double margin) const noexcept;
};

struct ResidualReport {
    std::string name;
    double max_abs_residual = 0.0;
    Grid2D grid{};
    double tolerance = 0.0;
    bool pass = false;
};

/// Builds a report with pass = (max_abs_residual <= tolerance). NaN fails.
ResidualReport make_report(std::string name, double max_abs_residual, const Grid2D& grid, double tolerance);

/// Max of |residual(p)| over the grid in row-major order.
double max_abs_over_grid(const Grid2D& grid, const std::function<double(Point2)>& residual);

/// Central-difference Jacobian, O(h²).
Mat2 jacobian(const PlanarMap& map, Point2 p, double h, const std::optional<Disc>& domain = std::nullopt);

/// max over the grid of ‖JᵀJ - e^{2φ} I‖ (max-entry norm), with J the
/// central-difference Jacobian of the constructed isometry.
/// Throws StencilError unless the grid sits inside the domain by one stencil width.
ResidualReport pullback_residual(const ConstructionResult& result, const ScalarField& phi, const Grid2D& grid,
                                 double h, double tolerance);

/// 5-point Laplacian, O(h²).
double laplacian(const ScalarField& field, Point2 p, double h, const std::optional<Disc>& domain = std::nullopt);

/// Gauss curvature of e^{2φ} g0 where g0 has curvature k0:
/// e^{s 2φ} (-Δφ + k0) with s = exponent_sign. s = -1 is the classical
/// identity; s = +1 reproduces the other printed convention.
double curvature_conformal(const ScalarField& phi, double k0, Point2 p, double h, int exponent_sign = -1,
                           const std::optional<Disc>& domain = std::nullopt);

/// Laplace-Beltrami operator of e^{2φ} g0 applied to u: e^{-2φ} Δu.
double laplace_beltrami_conformal(const ScalarField& u, const ScalarField& phi, Point2 p, double h,
                                  const std::optional<Disc>& domain = std::nullopt);

/// 1e-4 times the disc radius.
double default_fd_step(const Disc& domain) noexcept;

}  // namespace minding
