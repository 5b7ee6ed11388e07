#pragma once

#include <complex>
#include <vector>

#include "ctcprobe/geometry.hpp"

namespace ctcprobe {

using Complex = std::complex<double>;

/// One evaluation of a derivative two-point kernel A(tau, tau') at regulator
/// epsilon. The regulator is realized as the symmetric proper-time shift
/// tau -> tau - i eps/2, tau' -> tau' + i eps/2, so stationary kernels are the
/// analytic formulas at dtau - i eps, every stationary kernel is Hermitian at
/// fixed eps, and the time-machine image terms obey
/// term_n(tau, tau'; eps) = conj(term_{-n}(tau', tau; eps)) exactly.
struct KernelValue {
    Complex value;
    double epsilon;
};

// Analytic continuations in the time difference z = dtau - i eps. These back
// both the finite-eps kernels and the eps -> 0 contour integrals.
Complex minkowski_kernel_at(Complex z);
Complex ec_oscillator_at(Complex z, const EinsteinCylinder& g);
Complex ec_kernel_at(Complex z, const EinsteinCylinder& g);
Complex ec_regular_at(Complex z, const EinsteinCylinder& g);
Complex ads2_kernel_at(Complex z, const PoincareAdS2& g);
Complex ads2_regular_at(Complex z, const PoincareAdS2& g);

/// A_M = -1 / (2 pi (dtau - i eps)^2).
KernelValue kernel_minkowski(double dtau, double eps);

/// A_EC = -(pi/2L^2) csc^2(pi (dtau - i eps)/L) + gamma/(2L^2).
KernelValue kernel_einstein_cylinder(double dtau, const EinsteinCylinder& g, double eps);

/// Oscillator summand of A_EC (the csc^2 term alone).
KernelValue kernel_ec_oscillator(double dtau, const EinsteinCylinder& g, double eps);

/// Zero-mode summand of A_EC, the constant gamma/(2L^2).
double kernel_ec_zero_mode(const EinsteinCylinder& g);

/// A_AdS2 = -1/(2 pi z^2) * (16 - 12 W^2 z^2) / (4 - W^2 z^2)^2, z = dtau - i eps.
/// The eps -> 0 kernel has poles at dtau = +-2/W.
KernelValue kernel_ads2(double dtau, const PoincareAdS2& g, double eps);

/// n-th image term of the time-machine kernel,
///   d_tau d_tau' W_AdS2(x(tau), A^n x(tau')),
/// in closed form: with a = A^n and the trajectory zeta_pm = xi (1 +- W tau),
///   -(a W^2 xi^2 / 4 pi) [ 1/f1^2 + 1/f2^2 - 1/f3^2 - 1/f4^2 ],
///   f1 = zp - a zp',  f2 = a zm' - zm,  f3 = -zm - a zp',  f4 = zp + a zm',
/// all evaluated at the regulated proper times. xi cancels identically.
/// Requires |tau|, |tau'| <= 1/W (no-CTC window) and A > 1.
KernelValue kernel_tm_term(int n, double tau, double tau2, const TimeMachine& g,
                           const TrajectoryParams& traj, double eps);

/// Truncated image sum over n in [-N, N].
KernelValue kernel_tm_sum(int N, double tau, double tau2, const TimeMachine& g,
                          const TrajectoryParams& traj, double eps);

/// A_geometry - A_M for EinsteinCylinder or PoincareAdS2. Finite at dtau = 0.
/// Minkowski input throws UndefinedSplitError unless allow_minkowski_zero.
KernelValue kernel_regular_part(const GeometryParams& g, double dtau, double eps,
                                bool allow_minkowski_zero = false);

/// Default geometric regulator ladder eps_k = eps0 * 2^-k (eps0 = 1e-2 T, 6 rungs).
std::vector<double> default_eps_ladder(double T = 1.0);

namespace detail {

/// Image term with independent radii for the two trajectory points. Evaluating
/// at (xi, A^k xi) reindexes the sum: term(a; xi, A xi') == term(a A; xi, xi').
Complex tm_image_term(double a, double W, double xi_u, double xi_p, double tau, double tau2,
                      double eps);

/// a = A^n by repeated multiplication (deterministic across platforms).
double warp_power(double A, int n);

}  // namespace detail

}  // namespace ctcprobe
