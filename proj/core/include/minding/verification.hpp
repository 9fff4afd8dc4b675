#pragma once

// The full residual suite for a constructed isometry. Report names are part of
// the CLI output format.

#include <vector>

#include "minding/conformal_core.hpp"
#include "minding/geometry_check.hpp"

namespace minding {

struct VerifyTolerances {
    double potential_identity = 1e-8;
    double dual_route = 1e-10;
    double cr_residual = 1e-6;
    double pullback = 1e-5;
    double harmonicity = 1e-5;
    double curvature_flat = 1e-5;
};

struct VerifyOptions {
    /// Step for Jacobians and Cauchy-Riemann differences; <= 0 selects
    /// default_fd_step(domain).
    double fd_step = 0.0;
    /// Step for 5-point Laplacians; <= 0 selects 5e-4 * radius.
    double laplacian_step = 0.0;
    VerifyTolerances tolerances{};
};

/// Resolved steps for a given domain.
double resolved_fd_step(const VerifyOptions& options, const Disc& domain) noexcept;
double resolved_laplacian_step(const VerifyOptions& options, const Disc& domain) noexcept;

/// Largest span of a centered square grid that keeps every sample at
/// distance <= radius - margin from the center.
double max_grid_span(const Disc& domain, double margin) noexcept;

/// Square nx-by-ny grid centered on the basepoint filling the disc shrunk by `margin`.
Grid2D domain_grid(const Disc& domain, int nx, int ny, double margin);

/// Reports, in order: lemma1_identity, dual_route, cr_residual, pullback,
/// harmonicity_phi, harmonicity_psi, curvature_flat.
/// Throws StencilError when the grid does not fit the domain with the stencil margin.
std::vector<ResidualReport> verify_construction(const ConstructionResult& result, const Grid2D& grid,
                                                const VerifyOptions& options = {});

/// |Φ + log|g'| - Re f| with exact g' = e^{f - g}.
double identity_residual(const ConstructionResult& result, Point2 p);

/// |Φ + log‖∇Φ‖ - Re f| with ∇Φ from central differences.
double identity_residual_fd(const ConstructionResult& result, Point2 p, double h);

/// max(|Φx - Ψy|, |Φy + Ψx|) by central differences.
double cauchy_riemann_residual(const ConstructionResult& result, Point2 p, double h);

}  // namespace minding
