#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ctcprobe/errors.hpp"

namespace ctcprobe {

struct QuadratureConfig {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    int max_subdivisions = 20000;       ///< 1D panel splits
    int max_boxes_2d = 2000000;         ///< per-pass budget of the 2D scheme
    double support_halfwidth = 13.0;    ///< Gaussian truncation, units of T (tail < 1e-36)
    double detour_radius = 0.2;         ///< pole-detour semicircle radius, units of T
    std::vector<double> eps_ladder;     ///< empty -> default_eps_ladder(T)
    double tail_tol = 1e-9;             ///< image-sum tail tolerance (auto-N)

    void validate() const;
};

struct ExtrapolationReport {
    std::vector<std::pair<double, std::complex<double>>> values_at_eps;
    std::complex<double> extrapolated;
    double residual = 0.0;  ///< spread of the final Richardson column
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of a complex integrand on [a,b].
/// Error <= max(abs_tol, rel_tol |result|); deterministic for fixed inputs.
/// Throws ConvergenceFailure past max_subdivisions. `seeds` are optional
/// interior breakpoints for the initial panels.
std::complex<double> integrate_1d(const std::function<std::complex<double>(double)>& f,
                                  double a, double b, const QuadratureConfig& cfg,
                                  std::span<const double> seeds = {});

double integrate_1d_real(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& cfg, std::span<const double> seeds = {});

/// Integrates f along [a,b] on the real axis with semicircular detours of
/// radius cfg.detour_radius dipping into the lower half-plane around each
/// listed pole. Poles must be strictly inside (a,b) and pairwise separated by
/// more than two radii; otherwise a configuration error is thrown.
std::complex<double> integrate_with_pole_detour(
    const std::function<std::complex<double>(std::complex<double>)>& f, double a, double b,
    std::span<const double> poles, const QuadratureConfig& cfg,
    std::span<const double> seeds = {});

struct Rect {
    double ax, bx, ay, by;
};

/// Tensor-product adaptive 2D estimate: an outer adaptive Gauss-Kronrod pass
/// over the second variable of inner adaptive integrals over the first, with
/// the inner tolerance scaled to keep the accumulated error within budget.
/// Deterministic.
std::complex<double> integrate_2d(const std::function<std::complex<double>(double, double)>& f,
                                  const Rect& dom, const QuadratureConfig& cfg);

double integrate_2d_real(const std::function<double(double, double)>& f, const Rect& dom,
                         const QuadratureConfig& cfg);

/// Richardson (Neville) extrapolation of samples (eps_i, f(eps_i)) to eps -> 0,
/// assuming a leading error linear in eps. Requires >= 3 samples with strictly
/// decreasing eps. The residual reports the spread of the last column so a bad
/// error model is visible downstream.
ExtrapolationReport extrapolate_epsilon(
    std::span<const std::pair<double, std::complex<double>>> samples);

}  // namespace ctcprobe
