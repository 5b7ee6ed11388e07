#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctcprobe/quadrature.hpp"

namespace ctcprobe {

struct CheckOutcome {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool passed = false;   ///< passed <=> measured <= bound
    std::string context;   ///< parameter stamp
};

struct ValidationConfig {
    std::vector<std::string> only;  ///< run checks whose name contains any entry; empty = all
    QuadratureConfig quad;
    bool fast = false;              ///< trims the slow time-machine cross-checks
};

/// Names of every registered check, in execution order.
std::vector<std::string> validation_check_names();

/// Kernel limit relations: AdS2 -> M as w -> 0 and EC -> M as ell -> inf,
/// with two-rung ratio tests for the O(w^2) / O(1/ell^2) rates.
std::vector<CheckOutcome> check_kernel_limits();

/// EC oscillator kernel vs the flat-space image sum with its exact trigamma tail.
std::vector<CheckOutcome> check_ec_image_identity(double L, std::span<const double> dtau_grid,
                                                  int n_max);

/// Time-machine consistency: n=0 term vs AdS2, xi-invariance, scale-invariance
/// of the image terms, index-shift reindexing, and brute-force realness.
/// The Jacobi-theta cross-check slot is present but disabled.
std::vector<CheckOutcome> check_tm_consistency(const ValidationConfig& cfg);

/// Runs every selected check. Outcomes are deterministic and parameter-stamped.
std::vector<CheckOutcome> run_all(const ValidationConfig& cfg);

/// Line-oriented JSON, one object per check.
void write_jsonl(std::ostream& os, const std::vector<CheckOutcome>& outcomes);

}  // namespace ctcprobe
