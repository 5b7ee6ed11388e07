#include "ctcprobe/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctcprobe/parallel.hpp"
#include "ctcprobe/response.hpp"

namespace ctcprobe {

const char* const kSweepCsvHeader = "swept,P_TM,P_AdS2,P_EC,P_M,tail_estimate,eps_residual,status";

void SweepConfig::validate() const {
    if (grid.empty()) throw InvalidParameterError("sweep: grid must be nonempty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InvalidParameterError("sweep: grid must be strictly increasing");
    if (!(omega == omega)) throw InvalidParameterError("sweep: omega must be finite");
    if (!(fixed > 0.0)) throw InvalidParameterError("sweep: fixed parameter must be > 0");
    if (!(gamma >= 0.0)) throw InvalidParameterError("sweep: gamma must be >= 0");
    if (!auto_N && N < 1) throw InvalidParameterError("sweep: N must be >= 1");
    quadrature.validate();
    // every grid point must respect the no-CTC support guard w * S < 1
    const double S = quadrature.support_halfwidth;
    for (double v : grid) {
        const double w = mode == SweepMode::circumference ? fixed : v;
        if (!(w > 0.0)) throw InvalidParameterError("sweep: curvature w must be > 0");
        if (w * S >= 1.0 && std::erfc(std::sqrt(2.0) / w) >= 1e-6)
            throw InvalidParameterError(
                "sweep: switching support violates the no-CTC window at a grid point");
    }
}

namespace {

SweepRow sweep_point(const SweepConfig& cfg, double swept, double P_M, double P_AdS2_fixed,
                     double P_EC_fixed) {
    const double w = cfg.mode == SweepMode::circumference ? cfg.fixed : swept;
    const double ell = cfg.mode == SweepMode::circumference ? swept : cfg.fixed;

    SweepRow row;
    row.swept = swept;
    row.P_M = P_M;
    DetectorConfig det{cfg.omega};
    try {
        row.P_AdS2 = cfg.mode == SweepMode::circumference
                         ? P_AdS2_fixed
                         : response_ads2(det, {w}, cfg.quadrature).probability;
        row.P_EC = cfg.mode == SweepMode::curvature
                       ? P_EC_fixed
                       : response_einstein_cylinder(det, {ell, cfg.gamma}, cfg.quadrature)
                             .probability;
        TimeMachineOptions opts;
        opts.N = cfg.N;
        opts.auto_N = cfg.auto_N;
        const TimeMachine tm{std::exp(w * ell), ell};
        const auto r = response_time_machine(det, tm, cfg.quadrature, opts);
        row.P_TM = r.probability;
        row.tail_estimate = r.image_sum ? r.image_sum->tail_estimate : 0.0;
        row.eps_residual = r.extrapolation ? r.extrapolation->residual : 0.0;
        if (r.image_sum && !r.image_sum->tail_converged) row.status = "tail-not-converged";
    } catch (const ConvergenceFailure& e) {
        row.status = std::string("convergence-failure: ") + e.what();
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    return row;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

}  // namespace

SweepTable run_sweep(const SweepConfig& cfg, int threads) {
    cfg.validate();
    DetectorConfig det{cfg.omega};
    const double P_M = response_minkowski_closed(det).probability;

    // constant baselines computed once per sweep
    double P_AdS2_fixed = 0.0, P_EC_fixed = 0.0;
    if (cfg.mode == SweepMode::circumference)
        P_AdS2_fixed = response_ads2(det, {cfg.fixed}, cfg.quadrature).probability;
    else
        P_EC_fixed =
            response_einstein_cylinder(det, {cfg.fixed, cfg.gamma}, cfg.quadrature).probability;

    SweepTable table;
    table.rows.resize(cfg.grid.size());
    parallel_for_indexed(static_cast<int>(cfg.grid.size()), threads, [&](int i) {
        table.rows[i] = sweep_point(cfg, cfg.grid[i], P_M, P_AdS2_fixed, P_EC_fixed);
    });
    return table;
}

void write_csv(std::ostream& os, const SweepTable& table) {
    os << kSweepCsvHeader << "\n";
    for (const auto& r : table.rows) {
        os << fmt17(r.swept) << "," << fmt17(r.P_TM) << "," << fmt17(r.P_AdS2) << ","
           << fmt17(r.P_EC) << "," << fmt17(r.P_M) << "," << fmt17(r.tail_estimate) << ","
           << fmt17(r.eps_residual) << "," << r.status << "\n";
    }
}

void write_csv_file(const std::string& path, const SweepTable& table) {
    std::ofstream os(path);
    if (!os) throw InvalidParameterError("cannot open output path: " + path);
    write_csv(os, table);
    if (!os.good()) throw InvalidParameterError("write failed: " + path);
}

SweepTable read_csv(std::istream& is) {
    std::string line;
    int lineno = 0;
    if (!std::getline(is, line))
        throw InvalidParameterError("csv parse error at line 1: empty input");
    ++lineno;
    if (line == std::string(kSweepCsvHeader) + "\r") line.pop_back();
    if (line != kSweepCsvHeader)
        throw InvalidParameterError("csv parse error at line 1: unexpected header '" + line + "'");

    SweepTable table;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8)
            throw InvalidParameterError("csv parse error at line " + std::to_string(lineno) +
                                        ": expected 8 fields, got " +
                                        std::to_string(fields.size()));
        SweepRow r;
        try {
            size_t pos = 0;
            r.swept = std::stod(fields[0], &pos);
            r.P_TM = std::stod(fields[1]);
            r.P_AdS2 = std::stod(fields[2]);
            r.P_EC = std::stod(fields[3]);
            r.P_M = std::stod(fields[4]);
            r.tail_estimate = std::stod(fields[5]);
            r.eps_residual = std::stod(fields[6]);
        } catch (const std::exception&) {
            throw InvalidParameterError("csv parse error at line " + std::to_string(lineno) +
                                        ": non-numeric field");
        }
        r.status = fields[7];
        table.rows.push_back(std::move(r));
    }
    return table;
}

SweepTable read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidParameterError("cannot open csv: " + path);
    return read_csv(is);
}

SweepConfig load_sweep_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameterError(std::string("config parse error: ") + e.what());
    }

    SweepConfig cfg;
    const std::string mode = j.value("mode", "circumference");
    if (mode == "circumference") cfg.mode = SweepMode::circumference;
    else if (mode == "curvature") cfg.mode = SweepMode::curvature;
    else throw InvalidParameterError("config: mode must be 'circumference' or 'curvature'");

    cfg.omega = j.value("omega", cfg.omega);
    if (j.contains("w") && cfg.mode == SweepMode::circumference) cfg.fixed = j["w"].get<double>();
    if (j.contains("ell") && cfg.mode == SweepMode::curvature) cfg.fixed = j["ell"].get<double>();
    if (j.contains("fixed")) cfg.fixed = j["fixed"].get<double>();
    cfg.gamma = j.value("gamma", cfg.gamma);
    if (j.contains("N")) {
        if (j["N"].is_string() && j["N"].get<std::string>() == "auto") cfg.auto_N = true;
        else cfg.N = j["N"].get<int>();
    }
    if (j.contains("grid")) cfg.grid = j["grid"].get<std::vector<double>>();
    cfg.output_path = j.value("output_path", cfg.output_path);

    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
        cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.max_subdivisions =
            q.value("max_subdivisions", cfg.quadrature.max_subdivisions);
        cfg.quadrature.max_boxes_2d = q.value("max_boxes_2d", cfg.quadrature.max_boxes_2d);
        cfg.quadrature.support_halfwidth =
            q.value("support_halfwidth", cfg.quadrature.support_halfwidth);
        cfg.quadrature.detour_radius = q.value("detour_radius", cfg.quadrature.detour_radius);
        if (q.contains("eps_ladder"))
            cfg.quadrature.eps_ladder = q["eps_ladder"].get<std::vector<double>>();
        cfg.quadrature.tail_tol = q.value("tail_tol", cfg.quadrature.tail_tol);
    }
    return cfg;
}

SweepConfig load_sweep_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidParameterError("cannot open config: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return load_sweep_config(ss.str());
}

}  // namespace ctcprobe
