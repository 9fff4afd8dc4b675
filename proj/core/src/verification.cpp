#include "minding/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minding/errors.hpp"

namespace minding {

double resolved_fd_step(const VerifyOptions& options, const Disc& domain) noexcept {
    return options.fd_step > 0.0 ? options.fd_step : default_fd_step(domain);
}

double resolved_laplacian_step(const VerifyOptions& options, const Disc& domain) noexcept {
    return options.laplacian_step > 0.0 ? options.laplacian_step : 5e-4 * domain.radius;
}

double max_grid_span(const Disc& domain, double margin) noexcept {
    const double reach = domain.radius - margin;
    if (!(reach > 0.0)) return 0.0;
    return std::numbers::sqrt2 * reach * (1.0 - 1e-12);
}

Grid2D domain_grid(const Disc& domain, int nx, int ny, double margin) {
    const double span = max_grid_span(domain, margin);
    if (!(span > 0.0)) throw DomainError("domain is too small for the requested stencil margin");
    // Non-square grids use the longer side for the span, which keeps the
    // rectangle inside the inscribed square.
    return Grid2D::centered(to_point(domain.center), span, nx, ny);
}

double identity_residual(const ConstructionResult& result, Point2 p) {
    const Complex z = to_complex(p);
    const Complex g = result.g(z);
    const Complex fz = result.function().evaluate(z);
    const double grad_norm = std::abs(std::exp(fz - g));
    return std::abs(g.real() + std::log(grad_norm) - fz.real());
}

double identity_residual_fd(const ConstructionResult& result, Point2 p, double h) {
    const double phi_x = (result.phi({p.x + h, p.y}) - result.phi({p.x - h, p.y})) / (2.0 * h);
    const double phi_y = (result.phi({p.x, p.y + h}) - result.phi({p.x, p.y - h})) / (2.0 * h);
    return std::abs(result.phi(p) + std::log(std::hypot(phi_x, phi_y)) - result.conformal_exponent(p));
}

double cauchy_riemann_residual(const ConstructionResult& result, Point2 p, double h) {
    const Complex e = result.g(to_complex({p.x + h, p.y}));
    const Complex w = result.g(to_complex({p.x - h, p.y}));
    const Complex n = result.g(to_complex({p.x, p.y + h}));
    const Complex s = result.g(to_complex({p.x, p.y - h}));
    const double phi_x = (e.real() - w.real()) / (2.0 * h);
    const double phi_y = (n.real() - s.real()) / (2.0 * h);
    const double psi_x = (e.imag() - w.imag()) / (2.0 * h);
    const double psi_y = (n.imag() - s.imag()) / (2.0 * h);
    return std::max(std::abs(phi_x - psi_y), std::abs(phi_y + psi_x));
}

std::vector<ResidualReport> verify_construction(const ConstructionResult& result, const Grid2D& grid,
                                                const VerifyOptions& options) {
    grid.validate();
    const Disc& domain = result.domain();
    const double h = resolved_fd_step(options, domain);
    const double lap_h = resolved_laplacian_step(options, domain);
    if (!grid.inside(domain, std::max(h, lap_h))) {
        throw StencilError("grid does not fit inside the domain shrunk by the stencil width");
    }
    const VerifyTolerances& tol = options.tolerances;
    const ScalarField phi = [&result](Point2 p) { return result.phi(p); };
    const ScalarField psi = [&result](Point2 p) { return result.psi(p); };
    const ScalarField exponent = [&result](Point2 p) { return result.conformal_exponent(p); };

    std::vector<ResidualReport> reports;
    reports.push_back(make_report("lemma1_identity",
                                  max_abs_over_grid(grid, [&](Point2 p) { return identity_residual(result, p); }),
                                  grid, tol.potential_identity));
    reports.push_back(make_report("dual_route", max_abs_over_grid(grid, [&](Point2 p) {
                                      const Point2 w = result.isometry(p);
                                      const Point2 d = result.isometry_direct(p);
                                      return std::hypot(w.x - d.x, w.y - d.y);
                                  }),
                                  grid, tol.dual_route));
    reports.push_back(make_report("cr_residual",
                                  max_abs_over_grid(grid, [&](Point2 p) { return cauchy_riemann_residual(result, p, h); }),
                                  grid, tol.cr_residual));
    reports.push_back(pullback_residual(result, exponent, grid, h, tol.pullback));
    reports.push_back(make_report("harmonicity_phi",
                                  max_abs_over_grid(grid, [&](Point2 p) { return laplacian(phi, p, lap_h, domain); }),
                                  grid, tol.harmonicity));
    reports.push_back(make_report("harmonicity_psi",
                                  max_abs_over_grid(grid, [&](Point2 p) { return laplacian(psi, p, lap_h, domain); }),
                                  grid, tol.harmonicity));
    reports.push_back(make_report("curvature_flat", max_abs_over_grid(grid, [&](Point2 p) {
                                      const double classical = curvature_conformal(exponent, 0.0, p, lap_h, -1, domain);
                                      const double printed = curvature_conformal(exponent, 0.0, p, lap_h, +1, domain);
                                      return std::max(std::abs(classical), std::abs(printed));
                                  }),
                                  grid, tol.curvature_flat));
    return reports;
}

}  // namespace minding
