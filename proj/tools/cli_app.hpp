#pragma once

// `minding` command-line front end. Kept as a library so tests can drive it
// in-process as well as through the installed binary.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "minding/subset_metrics.hpp"
#include "minding/types.hpp"
#include "minding/verification.hpp"

namespace minding::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kDomainError = 3,
    kIoError = 4,
    kVerifyFailed = 5,
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::string subcommand;
    std::string expression = "z";
    Complex basepoint{0.0, 0.0};
    double initial_radius = 1.0;
    int nx = 21;
    int ny = 21;
    std::optional<double> span;
    VerifyTolerances tolerances{};
    double quad_rel_tol = 1e-12;
    double quad_abs_tol = 1e-14;
    double fd_step = 0.0;
    double laplacian_step = 0.0;
    OutputFormat format = OutputFormat::Json;
    std::string out_path;  // empty = standard output

    // curvature
    int exponent_sign = -1;
    double k0 = 0.0;

    // embed
    std::string preset = "gaussian";
    Interval x_range{};
    Interval y_range{};
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minding::cli
