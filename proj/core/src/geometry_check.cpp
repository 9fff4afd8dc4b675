#include "minding/geometry_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "minding/errors.hpp"

namespace minding {

Mat2 Mat2::gram() const noexcept {
    // columns c0 = (a0, a2), c1 = (a1, a3)
    const double g00 = a[0] * a[0] + a[2] * a[2];
    const double g01 = a[0] * a[1] + a[2] * a[3];
    const double g11 = a[1] * a[1] + a[3] * a[3];
    return {{g00, g01, g01, g11}};
}

double Mat2::max_abs() const noexcept {
    double m = 0.0;
    for (double v : a) {
        if (!(std::abs(v) <= m)) m = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::abs(v);
    }
    return m;
}

Mat2 operator-(const Mat2& lhs, const Mat2& rhs) noexcept {
    Mat2 out;
    for (std::size_t k = 0; k < 4; ++k) out.a[k] = lhs.a[k] - rhs.a[k];
    return out;
}

void Grid2D::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
    if (nx < 3 || ny < 3) throw std::invalid_argument("grid needs at least 3x3 samples");
}

Grid2D Grid2D::centered(Point2 center, double span, int nx, int ny) {
    if (nx < 3 || ny < 3) throw std::invalid_argument("grid needs at least 3x3 samples");
    if (!(span > 0.0)) throw std::invalid_argument("grid span must be positive");
    const double step = span / (std::max(nx, ny) - 1);
    return {{center.x - 0.5 * step * (nx - 1), center.y - 0.5 * step * (ny - 1)}, step, nx, ny};
}

bool Grid2D::inside(const Disc& disc, double margin) const noexcept {
    // Rectangle and disc are convex, so the corners decide.
    const double limit = disc.radius - margin;
    if (!(limit > 0.0)) return false;
    for (const Point2 corner : {at(0, 0), at(nx - 1, 0), at(0, ny - 1), at(nx - 1, ny - 1)}) {
        if (std::abs(to_complex(corner) - disc.center) > limit) return false;
    }
    return true;
}

ResidualReport make_report(std::string name, double max_abs_residual, const Grid2D& grid, double tolerance) {
    return {std::move(name), max_abs_residual, grid, tolerance, max_abs_residual <= tolerance};
}

double max_abs_over_grid(const Grid2D& grid, const std::function<double(Point2)>& residual) {
    grid.validate();
    double worst = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double r = std::abs(residual(grid.at(i, j)));
            if (std::isnan(r)) return std::numeric_limits<double>::infinity();
            worst = std::max(worst, r);
        }
    }
    return worst;
}

namespace {

void check_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("finite-difference step must be positive");
}

void check_stencil(Point2 p, double h, const std::optional<Disc>& domain) {
    if (!domain) return;
    for (const Point2 q : {Point2{p.x + h, p.y}, Point2{p.x - h, p.y}, Point2{p.x, p.y + h}, Point2{p.x, p.y - h}, p}) {
        if (!domain->contains(to_complex(q))) {
            throw StencilError("stencil around (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                               ") with step " + std::to_string(h) + " leaves the domain");
        }
    }
}

}  // namespace

Mat2 jacobian(const PlanarMap& map, Point2 p, double h, const std::optional<Disc>& domain) {
    check_step(h);
    check_stencil(p, h, domain);
    const Point2 xp = map({p.x + h, p.y});
    const Point2 xm = map({p.x - h, p.y});
    const Point2 yp = map({p.x, p.y + h});
    const Point2 ym = map({p.x, p.y - h});
    const double inv = 0.5 / h;
    return {{(xp.x - xm.x) * inv, (yp.x - ym.x) * inv, (xp.y - xm.y) * inv, (yp.y - ym.y) * inv}};
}

ResidualReport pullback_residual(const ConstructionResult& result, const ScalarField& phi, const Grid2D& grid,
                                 double h, double tolerance) {
    check_step(h);
    grid.validate();
    if (!grid.inside(result.domain(), h)) throw StencilError("grid does not fit inside the domain shrunk by one stencil width");
    const PlanarMap map = [&result](Point2 q) { return result.isometry(q); };
    const double worst = max_abs_over_grid(grid, [&](Point2 p) {
        const Mat2 metric = jacobian(map, p, h, result.domain()).gram();
        return (metric - Mat2::identity(std::exp(2.0 * phi(p)))).max_abs();
    });
    return make_report("pullback", worst, grid, tolerance);
}

double laplacian(const ScalarField& field, Point2 p, double h, const std::optional<Disc>& domain) {
    check_step(h);
    check_stencil(p, h, domain);
    const double sum = field({p.x + h, p.y}) + field({p.x - h, p.y}) + field({p.x, p.y + h}) + field({p.x, p.y - h});
    return (sum - 4.0 * field(p)) / (h * h);
}

double curvature_conformal(const ScalarField& phi, double k0, Point2 p, double h, int exponent_sign,
                           const std::optional<Disc>& domain) {
    if (exponent_sign != 1 && exponent_sign != -1) throw std::invalid_argument("exponent_sign must be +1 or -1");
    const double lap = laplacian(phi, p, h, domain);
    return std::exp(exponent_sign * 2.0 * phi(p)) * (-lap + k0);
}

double laplace_beltrami_conformal(const ScalarField& u, const ScalarField& phi, Point2 p, double h,
                                  const std::optional<Disc>& domain) {
    const double lap = laplacian(u, p, h, domain);
    return std::exp(-2.0 * phi(p)) * lap;
}

double default_fd_step(const Disc& domain) noexcept { return 1e-4 * domain.radius; }

}  // namespace minding
