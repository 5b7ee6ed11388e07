#pragma once

#include <optional>
#include <vector>

#include "ctcprobe/geometry.hpp"
#include "ctcprobe/kernels.hpp"
#include "ctcprobe/quadrature.hpp"

namespace ctcprobe {

enum class Method {
    closed_form,
    regular_split,
    image_sum,
    mode_sum_oracle,
    truncated_window,
};

const char* method_name(Method m);

struct ImageSumReport {
    std::vector<std::pair<int, Complex>> per_term;  ///< (n, extrapolated P^(n))
    int truncation_N = 0;
    double tail_estimate = 0.0;  ///< conservative geometric bound on the dropped tail
    bool tail_converged = true;  ///< false if |P^(n)| was not decaying at the cutoff
};

/// Excitation probability, always reported as P / lambda^2.
struct ResponseResult {
    double probability = 0.0;
    Method method = Method::closed_form;
    double imaginary_residue = 0.0;  ///< |Im| of the assembled complex estimate
    double clipped_mass = 0.0;       ///< switching mass clipped by the no-CTC window
    std::optional<ExtrapolationReport> extrapolation;
    std::optional<ImageSumReport> image_sum;
};

/// P_M / lambda^2 = (1/2) ( e^{-w^2/2} - sqrt(pi/2) w erfc(w/sqrt 2) ), w = omega.
ResponseResult response_minkowski_closed(const DetectorConfig& det);

/// Independent route: P_M = int_0^inf dk (k/2pi) |chi~(omega/T + k)|^2 by
/// adaptive quadrature of the Gaussian's Fourier transform.
ResponseResult response_minkowski_integral(const DetectorConfig& det,
                                           const QuadratureConfig& cfg);

/// P_EC = P_M + sqrt(pi T^2/2) int du e^{-u^2/2T^2} e^{-i omega u/T} A_EC^reg(u),
/// integrated along the real axis with lower detours at the image poles u = nL.
ResponseResult response_einstein_cylinder(const DetectorConfig& det, const EinsteinCylinder& g,
                                          const QuadratureConfig& cfg);

/// Same split for AdS2; the contour dips below the poles u = +-2/W when they
/// fall inside the truncated support.
ResponseResult response_ads2(const DetectorConfig& det, const PoincareAdS2& g,
                             const QuadratureConfig& cfg);

struct TimeMachineOptions {
    int N = 10;             ///< image-sum truncation; ignored when auto_N
    bool auto_N = false;    ///< accumulate until the tail passes tail_tol (cap 64)
    int threads = 1;        ///< parallelism across image terms
};

/// P_TM = sum_n P^(n), each P^(n) a 2D quadrature of
/// chi chi' e^{-i Omega dtau} * kernel_tm_term(n,...) per regulator rung,
/// Richardson-extrapolated to eps -> 0. Uses P^(-n) = conj(P^(n)) (exact for
/// the symmetric regulator), so the assembled sum is real by construction.
ResponseResult response_time_machine(const DetectorConfig& det, const TimeMachine& g,
                                     const QuadratureConfig& cfg,
                                     const TimeMachineOptions& opts = {});

/// Discrete oscillator-mode assembly (no quadrature):
/// P = sum_{n>=1} (2 pi^2 n / ell^2) e^{-(omega + 2 pi n/ell)^2 / 2}
///     + (gamma pi / 2 ell^2) e^{-omega^2/2}.
/// n_max <= 0 picks the smallest n_max whose Gaussian tail factor is < 1e-30.
ResponseResult response_ec_modesum_oracle(const DetectorConfig& det, const EinsteinCylinder& g,
                                          int n_max = 0);

/// Response with the window-truncated switching
/// chi_J(tau) = [Theta_eps(tau + 5T/2) - Theta_eps(tau - 5T/2)] e^{-tau^2/T^2},
/// Theta_eps(z) = (1 + tanh(z/eps))/2. Stationary geometries only.
ResponseResult response_truncated_switching(const DetectorConfig& det, const GeometryParams& g,
                                            double eps_uv, const QuadratureConfig& cfg);

}  // namespace ctcprobe
