#include "ctcprobe/kernels.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ctcprobe {

namespace {

constexpr double kPi = std::numbers::pi;

void require_regulator(double eps) {
    if (!(eps > 0.0)) throw InvalidParameterError("kernel: regulator epsilon must be > 0");
}

// x - sin x without cancellation: series for |x| < 1, direct otherwise.
Complex x_minus_sin(Complex x) {
    if (std::abs(x) >= 1.0) return x - std::sin(x);
    const Complex x2 = x * x;
    Complex term = x * x2 / 6.0;  // x^3 / 3!
    Complex sum = term;
    // term_{k+1}/term_k = -x^2 / ((2k+4)(2k+5)) for the sin remainder
    for (int k = 0; k < 16; ++k) {
        term *= -x2 / double((2 * k + 4) * (2 * k + 5));
        sum += term;
        if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

// csc^2(x) - 1/x^2, finite at x = 0 (value 1/3).
Complex csc2_minus_inverse_square(Complex x) {
    if (std::abs(x) < 1e-4) {
        const Complex x2 = x * x;
        return 1.0 / 3.0 + x2 / 15.0 + x2 * x2 * (2.0 / 189.0);
    }
    const Complex s = std::sin(x);
    return x_minus_sin(x) * (x + s) / (x * x * s * s);
}

}  // namespace

Complex minkowski_kernel_at(Complex z) {
    return -1.0 / (2.0 * kPi * z * z);
}

Complex ec_oscillator_at(Complex z, const EinsteinCylinder& g) {
    const Complex s = std::sin(kPi * z / g.L);
    return -kPi / (2.0 * g.L * g.L) / (s * s);
}

Complex ec_kernel_at(Complex z, const EinsteinCylinder& g) {
    return ec_oscillator_at(z, g) + g.gamma / (2.0 * g.L * g.L);
}

Complex ec_regular_at(Complex z, const EinsteinCylinder& g) {
    // -(pi/2L^2) [csc^2(pi z/L) - (L/pi z)^2] + gamma/2L^2, with the bracket
    // evaluated cancellation-free so the coincidence limit -pi/6L^2 is exact.
    const Complex x = kPi * z / g.L;
    return -kPi / (2.0 * g.L * g.L) * csc2_minus_inverse_square(x) +
           g.gamma / (2.0 * g.L * g.L);
}

Complex ads2_kernel_at(Complex z, const PoincareAdS2& g) {
    const Complex z2 = z * z;
    const double w2 = g.W * g.W;
    const Complex den = 4.0 - w2 * z2;
    return -1.0 / (2.0 * kPi * z2) * (16.0 - 12.0 * w2 * z2) / (den * den);
}

Complex ads2_regular_at(Complex z, const PoincareAdS2& g) {
    // A_AdS2 - A_M collapses algebraically to (W^2/2pi)(4 + W^2 z^2)/(4 - W^2 z^2)^2;
    // no subtraction happens numerically, so no series switch is needed.
    const double w2 = g.W * g.W;
    const Complex z2 = z * z;
    const Complex den = 4.0 - w2 * z2;
    return w2 / (2.0 * kPi) * (4.0 + w2 * z2) / (den * den);
}

KernelValue kernel_minkowski(double dtau, double eps) {
    require_regulator(eps);
    return {minkowski_kernel_at(Complex(dtau, -eps)), eps};
}

KernelValue kernel_einstein_cylinder(double dtau, const EinsteinCylinder& g, double eps) {
    require_regulator(eps);
    validate(g);
    return {ec_kernel_at(Complex(dtau, -eps), g), eps};
}

KernelValue kernel_ec_oscillator(double dtau, const EinsteinCylinder& g, double eps) {
    require_regulator(eps);
    validate(g);
    return {ec_oscillator_at(Complex(dtau, -eps), g), eps};
}

double kernel_ec_zero_mode(const EinsteinCylinder& g) {
    validate(g);
    return g.gamma / (2.0 * g.L * g.L);
}

KernelValue kernel_ads2(double dtau, const PoincareAdS2& g, double eps) {
    require_regulator(eps);
    validate(g);
    return {ads2_kernel_at(Complex(dtau, -eps), g), eps};
}

namespace detail {

double warp_power(double A, int n) {
    double a = 1.0;
    const double base = n >= 0 ? A : 1.0 / A;
    for (int k = 0; k < std::abs(n); ++k) a *= base;
    return a;
}

Complex tm_image_term(double a, double W, double xi_u, double xi_p, double tau, double tau2,
                      double eps) {
    // Image of the primed point: zeta'_pm -> a xi_p (1 +- W tau'). Scale
    // invariance folds both radii into an effective warp abar = a xi_p / xi_u;
    // with the symmetric regulator split tau -> tau - i eps/2,
    // tau' -> tau' + i eps/2 the four log factors reduce to
    //   sig + (1 - abar), sig - (1 - abar), sig - (1 + abar), sig + (1 + abar),
    //   sig = W (tau - abar tau') - i W eps (1 + abar) / 2.
    // This form subtracts like-scale quantities only; the naive
    // zeta - zeta' difference loses ~ulp(1)/(W |dtau|) near the diagonal.
    const double abar = a * (xi_p / xi_u);
    const Complex sig(W * (tau - abar * tau2), -0.5 * W * eps * (1.0 + abar));
    const Complex g1 = sig + (1.0 - abar);
    const Complex g2 = sig - (1.0 - abar);
    const Complex g3 = sig - (1.0 + abar);
    const Complex g4 = sig + (1.0 + abar);
    const double pref = -abar * W * W / (4.0 * kPi);
    return pref * (1.0 / (g1 * g1) + 1.0 / (g2 * g2) - 1.0 / (g3 * g3) - 1.0 / (g4 * g4));
}

}  // namespace detail

KernelValue kernel_tm_term(int n, double tau, double tau2, const TimeMachine& g,
                           const TrajectoryParams& traj, double eps) {
    require_regulator(eps);
    validate(g);
    validate(traj);
    const double W = g.W();
    const double window = 1.0 / W * (1.0 + 1e-12);
    if (std::fabs(tau) > window || std::fabs(tau2) > window)
        throw ChronologyViolationError("kernel_tm_term: proper time outside |tau| <= 1/W");
    const double a = detail::warp_power(g.A, n);
    return {detail::tm_image_term(a, W, traj.xi, traj.xi, tau, tau2, eps), eps};
}

KernelValue kernel_tm_sum(int N, double tau, double tau2, const TimeMachine& g,
                          const TrajectoryParams& traj, double eps) {
    if (N < 0) throw InvalidParameterError("kernel_tm_sum: N must be >= 0");
    Complex sum = kernel_tm_term(0, tau, tau2, g, traj, eps).value;
    for (int n = 1; n <= N; ++n) {
        sum += kernel_tm_term(n, tau, tau2, g, traj, eps).value;
        sum += kernel_tm_term(-n, tau, tau2, g, traj, eps).value;
    }
    return {sum, eps};
}

KernelValue kernel_regular_part(const GeometryParams& g, double dtau, double eps,
                                bool allow_minkowski_zero) {
    require_regulator(eps);
    const Complex z(dtau, -eps);
    if (std::holds_alternative<EinsteinCylinder>(g)) {
        const auto& ec = std::get<EinsteinCylinder>(g);
        validate(ec);
        return {ec_regular_at(z, ec), eps};
    }
    if (std::holds_alternative<PoincareAdS2>(g)) {
        const auto& ads = std::get<PoincareAdS2>(g);
        validate(ads);
        return {ads2_regular_at(z, ads), eps};
    }
    if (std::holds_alternative<Minkowski>(g)) {
        if (allow_minkowski_zero) return {Complex(0.0, 0.0), eps};
        throw UndefinedSplitError("regular part of the Minkowski kernel is identically zero");
    }
    throw InvalidParameterError("kernel_regular_part: geometry has no regular split");
}

std::vector<double> default_eps_ladder(double T) {
    std::vector<double> ladder(6);
    double e = 1e-2 * T;
    for (auto& v : ladder) {
        v = e;
        e *= 0.5;
    }
    return ladder;
}

}  // namespace ctcprobe
