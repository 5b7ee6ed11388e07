#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctcprobe/quadrature.hpp"

namespace ctcprobe {

enum class SweepMode {
    circumference,  ///< sweep ell at fixed w   (slow -> fast time machine)
    curvature,      ///< sweep w at fixed ell
};

struct SweepConfig {
    SweepMode mode = SweepMode::circumference;
    double omega = 0.1;
    double fixed = 0.05;       ///< w in circumference mode, ell in curvature mode
    double gamma = 0.01;
    int N = 10;
    bool auto_N = false;
    std::vector<double> grid;  ///< strictly increasing, nonempty
    QuadratureConfig quadrature;
    std::string output_path;

    void validate() const;
};

struct SweepRow {
    double swept = 0.0;
    double P_TM = 0.0;
    double P_AdS2 = 0.0;
    double P_EC = 0.0;
    double P_M = 0.0;
    double tail_estimate = 0.0;
    double eps_residual = 0.0;
    std::string status = "ok";  ///< "ok" or an error note; sweeps continue past failures
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// Header of the CSV schema: swept,P_TM,P_AdS2,P_EC,P_M,tail_estimate,eps_residual,status
extern const char* const kSweepCsvHeader;

/// Runs the sweep; grid points are computed in parallel (capped by `threads`)
/// and rows assembled in grid order, so output is deterministic.
SweepTable run_sweep(const SweepConfig& cfg, int threads = 1);

void write_csv(std::ostream& os, const SweepTable& table);
void write_csv_file(const std::string& path, const SweepTable& table);

/// Parses a sweep CSV. Throws InvalidParameterError with a line number on
/// malformed input.
SweepTable read_csv(std::istream& is);
SweepTable read_csv_file(const std::string& path);

/// Loads a SweepConfig from a JSON document mirroring the struct field names.
SweepConfig load_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config_file(const std::string& path);

}  // namespace ctcprobe
