// ctcprobe: derivative-coupling detector response in 2D spacetimes.
//
// Subcommands:
//   response  single-point excitation probability P/lambda^2
//   sweep     circumference / curvature parameter sweeps -> CSV
//   plot      CSV -> SVG line plot
//   validate  cross-check suite -> JSON-lines report
//
// Exit codes: 0 ok, 2 usage, 3 convergence failure, 4 validation failure.

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ctcprobe/parallel.hpp"
#include "ctcprobe/plot.hpp"
#include "ctcprobe/response.hpp"
#include "ctcprobe/sweep.hpp"
#include "ctcprobe/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitValidation = 4;

struct GeometryFlags {
    std::string geometry;
    double omega = 0.1;
    double w = 0.0;
    double ell = 0.0;
    double A = 0.0;
    double delta = 0.0;
    double gamma = 0.01;
    double xi = 1.0;
};

void add_quad_flags(CLI::App* cmd, ctcprobe::QuadratureConfig& q, std::vector<double>& ladder) {
    cmd->add_option("--tol", q.abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--rel-tol", q.rel_tol, "relative quadrature tolerance");
    cmd->add_option("--support", q.support_halfwidth, "switching support halfwidth (units of T)");
    cmd->add_option("--detour-radius", q.detour_radius, "pole detour radius (units of T)");
    cmd->add_option("--eps-ladder", ladder, "regulator ladder (strictly decreasing)");
}

ctcprobe::TimeMachine make_tm(const GeometryFlags& gf) {
    double w = gf.w, ell = gf.ell, A = gf.A;
    if (gf.delta > 0.0) A = 1.0 + gf.delta;
    if (ell <= 0.0) throw ctcprobe::InvalidParameterError("time machine: --ell is required");
    if (A > 0.0 && w > 0.0)
        throw ctcprobe::InvalidParameterError("time machine: give only one of --w, --A/--delta");
    if (A <= 0.0) {
        if (w <= 0.0)
            throw ctcprobe::InvalidParameterError("time machine: give --w or --A/--delta");
        A = std::exp(w * ell);
    }
    return ctcprobe::TimeMachine{A, ell};
}

int run_response(const GeometryFlags& gf, const ctcprobe::QuadratureConfig& q, int N,
                 bool auto_N) {
    using namespace ctcprobe;
    DetectorConfig det{gf.omega};
    det.xi = gf.xi;

    ResponseResult res;
    if (gf.geometry == "minkowski") {
        res = response_minkowski_closed(det);
    } else if (gf.geometry == "ec") {
        if (gf.ell <= 0.0) throw InvalidParameterError("ec: --ell is required (> 0)");
        res = response_einstein_cylinder(det, {gf.ell, gf.gamma}, q);
    } else if (gf.geometry == "ads2") {
        res = response_ads2(det, {gf.w}, q);
    } else if (gf.geometry == "tm") {
        TimeMachineOptions opts;
        opts.N = N;
        opts.auto_N = auto_N;
        opts.threads = thread_budget();
        res = response_time_machine(det, make_tm(gf), q, opts);
    } else {
        throw InvalidParameterError("unknown geometry: " + gf.geometry);
    }

    std::cout.precision(17);
    std::cout << "geometry: " << gf.geometry << "\n";
    std::cout << "method: " << method_name(res.method) << "\n";
    std::cout << "P/lambda^2: " << res.probability << "\n";
    std::cout << "imaginary_residue: " << res.imaginary_residue << "\n";
    if (res.clipped_mass > 0.0) std::cout << "clipped_mass: " << res.clipped_mass << "\n";
    if (res.extrapolation) std::cout << "eps_residual: " << res.extrapolation->residual << "\n";
    if (res.image_sum) {
        std::cout << "truncation_N: " << res.image_sum->truncation_N << "\n";
        std::cout << "tail_estimate: " << res.image_sum->tail_estimate << "\n";
        if (!res.image_sum->tail_converged) std::cout << "warning: image-sum tail not converged\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"derivative-coupling Unruh-DeWitt detector response probe"};
    app.require_subcommand(1);

    GeometryFlags gf;
    ctcprobe::QuadratureConfig quad;
    std::vector<double> ladder;
    int N = 10;
    std::string N_str;
    std::string config_path, out_path, csv_path, only, swept_label;

    auto* c_resp = app.add_subcommand("response", "single-point detector response");
    c_resp->add_option("--geometry", gf.geometry, "minkowski|ec|ads2|tm")->required();
    c_resp->add_option("--omega", gf.omega, "dimensionless energy gap");
    c_resp->add_option("--w", gf.w, "dimensionless curvature W*T");
    c_resp->add_option("--ell", gf.ell, "dimensionless circumference L/T");
    c_resp->add_option("--A", gf.A, "time-machine warp parameter (> 1)");
    c_resp->add_option("--delta", gf.delta, "warp parameter as A = 1 + delta");
    c_resp->add_option("--gamma", gf.gamma, "zero-mode regulator");
    c_resp->add_option("--xi", gf.xi, "static trajectory radius");
    c_resp->add_option("--N", N_str, "image-sum truncation (integer or 'auto')");
    add_quad_flags(c_resp, quad, ladder);

    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    std::string mode = "circumference";
    std::vector<double> grid;
    double fixed = 0.0;
    c_sweep->add_option("--config", config_path, "JSON sweep config (flags override)");
    c_sweep->add_option("--mode", mode, "circumference|curvature");
    c_sweep->add_option("--omega", gf.omega, "dimensionless energy gap");
    c_sweep->add_option("--w", gf.w, "fixed w (circumference mode)");
    c_sweep->add_option("--ell", gf.ell, "fixed ell (curvature mode)");
    c_sweep->add_option("--fixed", fixed, "fixed parameter (mode-dependent)");
    c_sweep->add_option("--gamma", gf.gamma);
    c_sweep->add_option("--N", N_str, "image-sum truncation (integer or 'auto')");
    c_sweep->add_option("--grid", grid, "swept values (strictly increasing)");
    c_sweep->add_option("--out", out_path, "output CSV path");
    add_quad_flags(c_sweep, quad, ladder);

    auto* c_plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
    c_plot->add_option("csv", csv_path, "input CSV from `sweep`")->required();
    c_plot->add_option("--out", out_path, "output SVG path")->required();
    c_plot->add_option("--xlabel", swept_label, "swept-axis label");

    auto* c_val = app.add_subcommand("validate", "run the cross-check suite");
    c_val->add_option("--only", only, "run only checks whose name contains this");
    c_val->add_option("--out", out_path, "JSON-lines report path (default stdout)");
    bool fast = false;
    c_val->add_flag("--fast", fast, "skip the slow time-machine response checks");
    add_quad_flags(c_val, quad, ladder);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!ladder.empty()) quad.eps_ladder = ladder;
        bool auto_N = false;
        if (!N_str.empty()) {
            if (N_str == "auto") auto_N = true;
            else N = std::stoi(N_str);
        }

        if (c_resp->parsed()) return run_response(gf, quad, N, auto_N);

        if (c_sweep->parsed()) {
            ctcprobe::SweepConfig cfg;
            if (!config_path.empty()) cfg = ctcprobe::load_sweep_config_file(config_path);
            if (c_sweep->count("--mode") || config_path.empty())
                cfg.mode = mode == "curvature" ? ctcprobe::SweepMode::curvature
                                               : ctcprobe::SweepMode::circumference;
            if (c_sweep->count("--omega") || config_path.empty()) cfg.omega = gf.omega;
            if (c_sweep->count("--gamma")) cfg.gamma = gf.gamma;
            if (c_sweep->count("--w")) cfg.fixed = gf.w;
            if (c_sweep->count("--ell")) cfg.fixed = gf.ell;
            if (c_sweep->count("--fixed")) cfg.fixed = fixed;
            if (!N_str.empty()) {
                cfg.auto_N = auto_N;
                if (!auto_N) cfg.N = N;
            }
            if (!grid.empty()) cfg.grid = grid;
            if (c_sweep->count("--tol")) cfg.quadrature.abs_tol = quad.abs_tol;
            if (c_sweep->count("--rel-tol")) cfg.quadrature.rel_tol = quad.rel_tol;
            if (c_sweep->count("--support")) cfg.quadrature.support_halfwidth = quad.support_halfwidth;
            if (c_sweep->count("--detour-radius")) cfg.quadrature.detour_radius = quad.detour_radius;
            if (!ladder.empty()) cfg.quadrature.eps_ladder = ladder;
            if (!out_path.empty()) cfg.output_path = out_path;
            if (cfg.output_path.empty()) cfg.output_path = "sweep.csv";

            const auto table = ctcprobe::run_sweep(cfg, ctcprobe::thread_budget());
            ctcprobe::write_csv_file(cfg.output_path, table);
            std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output_path << "\n";
            for (const auto& r : table.rows)
                if (r.status.rfind("convergence-failure", 0) == 0) return kExitConvergence;
            return kExitOk;
        }

        if (c_plot->parsed()) {
            if (swept_label.empty()) swept_label = "swept";
            ctcprobe::render_svg_file(csv_path, out_path, swept_label);
            std::cout << "wrote " << out_path << "\n";
            return kExitOk;
        }

        if (c_val->parsed()) {
            ctcprobe::ValidationConfig vcfg;
            vcfg.fast = fast;
            vcfg.quad = quad;
            if (!c_val->count("--tol")) vcfg.quad.abs_tol = 1e-8;
            if (!c_val->count("--rel-tol")) vcfg.quad.rel_tol = 1e-8;
            if (!only.empty()) {
                bool known = false;
                for (const auto& name : ctcprobe::validation_check_names())
                    if (name.find(only) != std::string::npos) known = true;
                if (!known) {
                    std::cerr << "unknown check name: " << only << "\n";
                    return kExitUsage;
                }
                vcfg.only.push_back(only);
            }
            const auto outcomes = ctcprobe::run_all(vcfg);
            if (out_path.empty()) {
                ctcprobe::write_jsonl(std::cout, outcomes);
            } else {
                std::ofstream os(out_path);
                if (!os) throw ctcprobe::InvalidParameterError("cannot open: " + out_path);
                ctcprobe::write_jsonl(os, outcomes);
            }
            size_t failed = 0;
            for (const auto& c : outcomes)
                if (!c.passed) ++failed;
            std::cerr << outcomes.size() - failed << "/" << outcomes.size() << " checks passed\n";
            return failed == 0 ? kExitOk : kExitValidation;
        }
    } catch (const ctcprobe::ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        std::cerr << "best estimate: " << e.best.real();
        if (e.best.imag() != 0.0) std::cerr << " + " << e.best.imag() << "i";
        std::cerr << "  error bound: " << e.bound << "\n";
        return kExitConvergence;
    } catch (const ctcprobe::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ctcprobe::ChronologyViolationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
