#include "cli_app.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "minding/complex_expr.hpp"
#include "minding/conformal_core.hpp"
#include "minding/errors.hpp"
#include "minding/geometry_check.hpp"

#ifndef MINDING_VERSION
#define MINDING_VERSION "0.0.0"
#endif

namespace minding::cli {

namespace {

using Json = nlohmann::ordered_json;

// Thrown inside a subcommand to leave with a specific exit code.
struct Failure {
    int code;
    Json error;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
    throw Failure{code, Json{{"code", code}, {"kind", kind}, {"message", message}}};
}

double parse_real(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || std::isnan(v)) throw CLI::ValidationError("not a number: '" + text + "'");
    return v;
}

std::pair<double, double> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected two comma-separated numbers, got '" + text + "'");
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json grid_meta(const Grid2D& grid) {
    return Json{{"origin", {grid.origin.x, grid.origin.y}}, {"step", grid.step}, {"nx", grid.nx}, {"ny", grid.ny}};
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

struct NamedGrid {
    std::string name;
    Grid2D grid;
    std::vector<double> values;
};

Json grid_json(const NamedGrid& g) {
    Json j = grid_meta(g.grid);
    Json values = Json::array();
    for (double v : g.values) values.push_back(json_number(v));
    j["values"] = std::move(values);
    return j;
}

Json report_json(const ResidualReport& r) {
    return Json{{"name", r.name},
                {"max_abs_residual", json_number(r.max_abs_residual)},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"grid", grid_meta(r.grid)}};
}

NamedGrid sample_grid(std::string name, const Grid2D& grid, const std::function<double(Point2)>& fn) {
    NamedGrid out{std::move(name), grid, {}};
    out.values.reserve(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) out.values.push_back(fn(grid.at(i, j)));
    }
    return out;
}

Json tolerances_json(const RunConfig& cfg) {
    const auto& t = cfg.tolerances;
    return Json{{"lemma1_identity", t.potential_identity}, {"dual_route", t.dual_route}, {"cr_residual", t.cr_residual},
                {"pullback", t.pullback},               {"harmonicity", t.harmonicity}, {"curvature_flat", t.curvature_flat},
                {"quad_rel", cfg.quad_rel_tol},          {"quad_abs", cfg.quad_abs_tol}};
}

// ---------------------------------------------------------------------------
// Output

class Emitter {
public:
    Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void emit(const Json& meta, const std::vector<NamedGrid>& grids, const std::vector<ResidualReport>& reports) {
        if (cfg_.format == OutputFormat::Json) {
            Json doc;
            doc["meta"] = meta;
            Json g = Json::object();
            for (const auto& grid : grids) g[grid.name] = grid_json(grid);
            doc["grids"] = std::move(g);
            Json r = Json::array();
            for (const auto& report : reports) r.push_back(report_json(report));
            doc["reports"] = std::move(r);
            write_text(cfg_.out_path, doc.dump(2) + "\n");
        } else {
            emit_csv(meta, grids, reports);
        }
    }

private:
    void write_text(const std::string& path, const std::string& text) {
        if (path.empty()) {
            out_ << text;
            out_.flush();
            return;
        }
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file) fail(kIoError, "io", "cannot open '" + path + "' for writing");
        file << text;
        file.close();
        if (!file) fail(kIoError, "io", "failed writing '" + path + "'");
    }

    static std::string csv_grid(const NamedGrid& g) {
        std::string s = "x,y,value\n";
        for (int j = 0; j < g.grid.ny; ++j) {
            for (int i = 0; i < g.grid.nx; ++i) {
                const Point2 p = g.grid.at(i, j);
                s += format_number(p.x) + "," + format_number(p.y) + "," +
                     format_number(g.values[static_cast<std::size_t>(j * g.grid.nx + i)]) + "\n";
            }
        }
        return s;
    }

    static std::string csv_pair(const NamedGrid& first, const NamedGrid& second) {
        std::string s = "x,y,w1,w2\n";
        for (int j = 0; j < first.grid.ny; ++j) {
            for (int i = 0; i < first.grid.nx; ++i) {
                const Point2 p = first.grid.at(i, j);
                const auto k = static_cast<std::size_t>(j * first.grid.nx + i);
                s += format_number(p.x) + "," + format_number(p.y) + "," + format_number(first.values[k]) + "," +
                     format_number(second.values[k]) + "\n";
            }
        }
        return s;
    }

    static std::string csv_reports(const std::vector<ResidualReport>& reports) {
        std::string s = "name,max_abs_residual,tolerance,pass\n";
        for (const auto& r : reports) {
            s += r.name + "," + format_number(r.max_abs_residual) + "," + format_number(r.tolerance) + "," +
                 (r.pass ? "true" : "false") + "\n";
        }
        return s;
    }

    void emit_csv(const Json& meta, const std::vector<NamedGrid>& grids, const std::vector<ResidualReport>& reports) {
        std::vector<std::pair<std::string, std::string>> files;
        const NamedGrid* w1 = nullptr;
        const NamedGrid* w2 = nullptr;
        for (const auto& g : grids) {
            if (g.name == "W1") w1 = &g;
            if (g.name == "W2") w2 = &g;
        }
        for (const auto& g : grids) {
            if (&g == w1 && w2 != nullptr) {
                files.emplace_back("W", csv_pair(*w1, *w2));
            } else if (&g == w2 && w1 != nullptr) {
                continue;
            } else {
                files.emplace_back(g.name, csv_grid(g));
            }
        }
        if (!reports.empty()) files.emplace_back("reports", csv_reports(reports));
        files.emplace_back("meta", "key,value\n" + flatten_meta(meta));

        if (cfg_.out_path.empty()) {
            std::string all;
            for (const auto& [name, text] : files) all += "# " + name + "\n" + text;
            write_text("", all);
            return;
        }
        std::error_code ec;
        std::filesystem::create_directories(cfg_.out_path, ec);
        if (ec) fail(kIoError, "io", "cannot create directory '" + cfg_.out_path + "': " + ec.message());
        for (const auto& [name, text] : files) {
            write_text((std::filesystem::path(cfg_.out_path) / (name + ".csv")).string(), text);
        }
    }

    static std::string flatten_meta(const Json& meta) {
        std::string s;
        for (const auto& item : meta.items()) s += item.key() + "," + quote(item.value().dump()) + "\n";
        return s;
    }

    static std::string quote(const std::string& text) {
        std::string s = "\"";
        for (char c : text) {
            if (c == '"') s += '"';
            s += c;
        }
        return s + "\"";
    }

    const RunConfig& cfg_;
    std::ostream& out_;
};

// ---------------------------------------------------------------------------
// Subcommands

Expr parse_expression(const std::string& text) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        Json error{{"code", kParseError},
                   {"kind", e.kind() == ParseError::Kind::Syntax ? "syntax" : "unknown_identifier"},
                   {"message", e.what()},
                   {"offset", e.offset()},
                   {"expected", e.expected()}};
        throw Failure{kParseError, std::move(error)};
    }
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions options;
    options.fd_step = cfg.fd_step;
    options.laplacian_step = cfg.laplacian_step;
    options.tolerances = cfg.tolerances;
    return options;
}

QuadratureConfig quadrature(const RunConfig& cfg) {
    QuadratureConfig q;
    q.rel_tol = cfg.quad_rel_tol;
    q.abs_tol = cfg.quad_abs_tol;
    return q;
}

struct Pipeline {
    ConstructionResult result;
    Grid2D grid;
};

Pipeline build_pipeline(const RunConfig& cfg, const Expr& f, std::ostream& err) {
    ConstructionConfig cc;
    cc.basepoint = cfg.basepoint;
    cc.initial_radius = cfg.initial_radius;
    cc.quadrature = quadrature(cfg);
    ConstructionResult result = construct_isometry(f, cc);

    const Disc& domain = result.domain();
    const VerifyOptions options = verify_options(cfg);
    const double margin = std::max(resolved_fd_step(options, domain), resolved_laplacian_step(options, domain));
    const double limit = max_grid_span(domain, margin);
    if (!(limit > 0.0)) fail(kDomainError, "domain", "validated domain is too small for the stencil width");
    double span = cfg.span.value_or(limit);
    if (span > limit) {
        Json warning{{"warning", {{"kind", "span_shrunk"},
                                  {"message", "grid span exceeds the validated domain; shrinking"},
                                  {"requested", span},
                                  {"used", limit}}}};
        err << warning.dump() << "\n";
        span = limit;
    }
    return {std::move(result), Grid2D::centered(to_point(cfg.basepoint), span, cfg.nx, cfg.ny)};
}

Json construction_meta(const RunConfig& cfg, const ConstructionResult& result) {
    return Json{{"subcommand", cfg.subcommand},
                {"expression", cfg.expression},
                {"basepoint", {cfg.basepoint.real(), cfg.basepoint.imag()}},
                {"C", {result.constant().real(), result.constant().imag()}},
                {"radius", result.domain().radius},
                {"tolerances", tolerances_json(cfg)},
                {"tool_version", MINDING_VERSION}};
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Expr f = parse_expression(cfg.expression);
    const Pipeline p = build_pipeline(cfg, f, err);
    const ConstructionResult& r = p.result;
    std::vector<NamedGrid> grids;
    grids.push_back(sample_grid("Phi", p.grid, [&](Point2 q) { return r.phi(q); }));
    grids.push_back(sample_grid("Psi", p.grid, [&](Point2 q) { return r.psi(q); }));
    grids.push_back(sample_grid("W1", p.grid, [&](Point2 q) { return r.isometry(q).x; }));
    grids.push_back(sample_grid("W2", p.grid, [&](Point2 q) { return r.isometry(q).y; }));
    grids.push_back(sample_grid("conformal_exponent", p.grid, [&](Point2 q) { return r.conformal_exponent(q); }));
    Emitter(cfg, out).emit(construction_meta(cfg, r), grids, {});
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Expr f = parse_expression(cfg.expression);
    const Pipeline p = build_pipeline(cfg, f, err);
    const auto reports = verify_construction(p.result, p.grid, verify_options(cfg));
    Emitter(cfg, out).emit(construction_meta(cfg, p.result), {}, reports);
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    return all_pass ? kOk : kVerifyFailed;
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const Expr f = parse_expression(cfg.expression);
    const double span = cfg.span.value_or(1.0);
    const Grid2D grid = Grid2D::centered(to_point(cfg.basepoint), span, cfg.nx, cfg.ny);
    const double h = cfg.laplacian_step > 0.0 ? cfg.laplacian_step : 1e-3;
    const ScalarField phi = [&f](Point2 q) { return real_part_field(f, q); };
    NamedGrid curvature = sample_grid("K", grid, [&](Point2 q) {
        return curvature_conformal(phi, cfg.k0, q, h, cfg.exponent_sign);
    });
    // For harmonic φ the flat Laplacian vanishes and only the scaled k0 remains.
    double worst = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double expected = std::exp(cfg.exponent_sign * 2.0 * phi(grid.at(i, j))) * cfg.k0;
            const double r = std::abs(curvature.values[static_cast<std::size_t>(j * grid.nx + i)] - expected);
            worst = std::isnan(r) ? std::numeric_limits<double>::infinity() : std::max(worst, r);
        }
    }
    const ResidualReport report =
        make_report(cfg.k0 == 0.0 ? "curvature_flat" : "curvature", worst, grid, cfg.tolerances.curvature_flat);
    Json meta{{"subcommand", cfg.subcommand}, {"expression", cfg.expression},
              {"basepoint", {cfg.basepoint.real(), cfg.basepoint.imag()}},
              {"k0", cfg.k0}, {"exponent_sign", cfg.exponent_sign}, {"step", h},
              {"tolerances", tolerances_json(cfg)}, {"tool_version", MINDING_VERSION}};
    Emitter(cfg, out).emit(meta, {curvature}, {report});
    return kOk;
}

Json range_json(const Interval& r) { return Json{format_number(r.lo), format_number(r.hi)}; }

Json side_json(const SideLength& s) { return s.unbounded ? Json("unbounded") : Json(s.value); }

int cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    ProductMetricSpec spec;
    if (cfg.preset == "gaussian") {
        spec = gaussian_product_metric();
        spec.x_range = cfg.x_range;
        spec.y_range = cfg.y_range;
    } else {
        spec = flat_product_metric(cfg.x_range, cfg.y_range);
    }
    const QuadratureConfig q = quadrature(cfg);
    const auto [side_u, side_v] = image_side_lengths(spec, q);

    auto center_of = [](const Interval& r) { return r.bounded() ? 0.5 * (r.lo + r.hi) : 0.0; };
    auto width_of = [](const Interval& r) { return r.bounded() ? r.hi - r.lo : 2.0; };
    const double span = cfg.span.value_or(std::min(width_of(spec.x_range), width_of(spec.y_range)));
    const Grid2D grid = Grid2D::centered({center_of(spec.x_range), center_of(spec.y_range)}, span, cfg.nx, cfg.ny);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto inside = [&spec](Point2 p) { return spec.x_range.contains(p.x) && spec.y_range.contains(p.y); };
    NamedGrid u = sample_grid("u", grid, [&](Point2 p) { return inside(p) ? arclength(spec.a, 0.0, p.x, q) : nan; });
    NamedGrid v = sample_grid("v", grid, [&](Point2 p) { return inside(p) ? arclength(spec.b, 0.0, p.y, q) : nan; });

    Json meta{{"subcommand", cfg.subcommand}, {"preset", cfg.preset},
              {"x_range", range_json(spec.x_range)}, {"y_range", range_json(spec.y_range)},
              {"sides", {side_json(side_u), side_json(side_v)}},
              {"tolerances", tolerances_json(cfg)}, {"tool_version", MINDING_VERSION}};
    Emitter(cfg, out).emit(meta, {u, v}, {});
    return kOk;
}

// ---------------------------------------------------------------------------
// Argument wiring

void add_output_flags(CLI::App& sub, RunConfig& cfg, std::string& format) {
    sub.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--out", cfg.out_path, "Output file (json) or directory (csv); default standard output");
    sub.add_option("--quad-rel-tol,--tol-quad-rel", cfg.quad_rel_tol, "Quadrature relative tolerance");
    sub.add_option("--quad-abs-tol,--tol-quad-abs", cfg.quad_abs_tol, "Quadrature absolute tolerance");
}

void add_grid_flags(CLI::App& sub, RunConfig& cfg, std::string& grid, std::string& z0) {
    sub.add_option("--z0", z0, "Basepoint RE,IM");
    sub.add_option("--grid", grid, "Sample grid NXxNY");
    sub.add_option("--span", cfg.span, "Grid span (longer side)")->check(CLI::PositiveNumber);
}

void add_construction_flags(CLI::App& sub, RunConfig& cfg, std::string& grid, std::string& z0) {
    sub.add_option("--f", cfg.expression, "Analytic function of z")->required();
    sub.add_option("--radius", cfg.initial_radius, "Radius of the search disc")->check(CLI::PositiveNumber);
    add_grid_flags(sub, cfg, grid, z0);
    sub.add_option("--fd-step", cfg.fd_step, "Finite-difference step for Jacobians (default 1e-4 * radius)");
    sub.add_option("--laplacian-step", cfg.laplacian_step, "Step for 5-point Laplacians");
    auto& t = cfg.tolerances;
    sub.add_option("--tol-potential,--tol-lemma1", t.potential_identity, "Tolerance for the potential identity");
    sub.add_option("--tol-dual", t.dual_route, "Tolerance for e^g versus h + C");
    sub.add_option("--tol-cr", t.cr_residual, "Tolerance for Cauchy-Riemann residuals");
    sub.add_option("--tol-pullback", t.pullback, "Tolerance for the pulled-back metric");
    sub.add_option("--tol-harmonic", t.harmonicity, "Tolerance for discrete Laplacians");
    sub.add_option("--tol-curvature", t.curvature_flat, "Tolerance for flat curvature");
}

Interval parse_interval(const std::string& text) {
    const auto [lo, hi] = parse_pair(text);
    if (!(lo < hi)) throw CLI::ValidationError("range must satisfy lo < hi, got '" + text + "'");
    return {lo, hi};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explicit local isometries for flat conformal metrics", "minding"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MINDING_VERSION);

    RunConfig cfg;
    std::string format = "json";
    std::string grid_text;
    std::string z0_text;
    std::string x_range_text = "-inf,inf";
    std::string y_range_text = "-inf,inf";

    auto* construct = app.add_subcommand("construct", "Build the isometry and emit Phi, Psi, W and phi grids");
    auto* verify = app.add_subcommand("verify", "Build the isometry and run every residual check");
    auto* curvature = app.add_subcommand("curvature", "Curvature of e^{2 Re f} g0 on a grid");
    auto* embed = app.add_subcommand("embed", "Arclength embedding of a product metric");

    for (auto* sub : {construct, verify}) {
        add_construction_flags(*sub, cfg, grid_text, z0_text);
        add_output_flags(*sub, cfg, format);
    }
    curvature->add_option("--f", cfg.expression, "Analytic function of z; the conformal exponent is Re f")->required();
    add_grid_flags(*curvature, cfg, grid_text, z0_text);
    curvature->add_option("--sign", cfg.exponent_sign, "Exponent sign of the conformal factor")
        ->check(CLI::IsMember({-1, 1}));
    curvature->add_option("--k0", cfg.k0, "Curvature of the base metric");
    curvature->add_option("--laplacian-step", cfg.laplacian_step, "Step for 5-point Laplacians (default 1e-3)");
    curvature->add_option("--tol-curvature", cfg.tolerances.curvature_flat, "Tolerance for the curvature report");
    add_output_flags(*curvature, cfg, format);

    embed->add_option("--preset", cfg.preset, "Product metric")->check(CLI::IsMember({"gaussian", "zero"}));
    embed->add_option("--x-range", x_range_text, "x range LO,HI (inf allowed)");
    embed->add_option("--y-range", y_range_text, "y range LO,HI (inf allowed)");
    embed->add_option("--grid", grid_text, "Sample grid NXxNY");
    embed->add_option("--span", cfg.span, "Grid span")->check(CLI::PositiveNumber);
    add_output_flags(*embed, cfg, format);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!z0_text.empty()) {
            const auto [re, im] = parse_pair(z0_text);
            cfg.basepoint = {re, im};
        }
        if (!grid_text.empty()) {
            const auto x = grid_text.find_first_of("xX");
            if (x == std::string::npos) throw CLI::ValidationError("--grid expects NXxNY, got '" + grid_text + "'");
            cfg.nx = std::stoi(grid_text.substr(0, x));
            cfg.ny = std::stoi(grid_text.substr(x + 1));
            if (cfg.nx < 3 || cfg.ny < 3) throw CLI::ValidationError("--grid needs at least 3x3 samples");
        }
        cfg.x_range = parse_interval(x_range_text);
        cfg.y_range = parse_interval(y_range_text);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const std::exception& e) {
        err << Json{{"error", {{"code", kUsage}, {"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return kUsage;
    }
    cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

    try {
        if (*construct) {
            cfg.subcommand = "construct";
            return cmd_construct(cfg, out, err);
        }
        if (*verify) {
            cfg.subcommand = "verify";
            return cmd_verify(cfg, out, err);
        }
        if (*curvature) {
            cfg.subcommand = "curvature";
            return cmd_curvature(cfg, out, err);
        }
        cfg.subcommand = "embed";
        return cmd_embed(cfg, out, err);
    } catch (const Failure& f) {
        err << Json{{"error", f.error}}.dump() << "\n";
        return f.code;
    } catch (const DomainError& e) {
        err << Json{{"error", {{"code", kDomainError}, {"kind", "domain"}, {"message", e.what()}}}}.dump() << "\n";
        return kDomainError;
    } catch (const Error& e) {
        err << Json{{"error", {{"code", kDomainError}, {"kind", "numerical"}, {"message", e.what()}}}}.dump() << "\n";
        return kDomainError;
    } catch (const std::invalid_argument& e) {
        err << Json{{"error", {{"code", kUsage}, {"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return kUsage;
    }
}

}  // namespace minding::cli
