#include "ctcprobe/validation.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ctcprobe/kernels.hpp"
#include "ctcprobe/response.hpp"
#include "ctcprobe/special.hpp"

namespace ctcprobe {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_ctx(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v;
    }
    return os.str();
}

CheckOutcome outcome(std::string name, double measured, double bound, std::string ctx) {
    CheckOutcome c;
    c.name = std::move(name);
    c.measured = measured;
    c.bound = bound;
    c.passed = measured <= bound;
    c.context = std::move(ctx);
    return c;
}

// Flat-space image sum sum_{|n| <= n_max} A_M(tau, tau' + nL) plus the exact
// trigamma tail; the independent oracle for the EC oscillator kernel.
std::complex<double> ec_image_sum_oracle(double dtau, double L, int n_max, double eps) {
    const std::complex<double> z(dtau, -eps);
    std::complex<double> sum = minkowski_kernel_at(z);
    for (int n = 1; n <= n_max; ++n) {
        sum += minkowski_kernel_at(z - double(n) * L);
        sum += minkowski_kernel_at(z + double(n) * L);
    }
    // sum_{n > N} [ (z - nL)^-2 + (z + nL)^-2 ] with psi_1; z's imaginary part
    // is negligible at the eps used here, so the real trigamma suffices.
    const double zr = z.real();
    const double tail = (trigamma(n_max + 1 - zr / L) + trigamma(n_max + 1 + zr / L)) / (L * L);
    sum += -tail / (2.0 * kPi);
    return sum;
}

}  // namespace

std::vector<CheckOutcome> check_kernel_limits() {
    std::vector<CheckOutcome> out;
    const double dtau = 1.0;
    const double eps = 1e-8;

    // AdS2 -> Minkowski, deviation ~ w^2: halving w quarters the gap
    {
        const auto dev = [&](double w) {
            return std::abs(kernel_ads2(dtau, {w}, eps).value -
                            kernel_minkowski(dtau, eps).value);
        };
        const double ratio = dev(0.02) / dev(0.01);
        out.push_back(outcome("kernel_limits.ads2_w2_scaling", std::fabs(ratio - 4.0), 0.8,
                              fmt_ctx({{"dtau", dtau}, {"w_hi", 0.02}, {"w_lo", 0.01}})));
    }
    // EC -> Minkowski, deviation ~ 1/ell^2: doubling ell quarters the gap
    {
        const auto dev = [&](double L) {
            return std::abs(kernel_einstein_cylinder(dtau, {L, 0.01}, eps).value -
                            kernel_minkowski(dtau, eps).value);
        };
        const double ratio = dev(100.0) / dev(200.0);
        out.push_back(outcome("kernel_limits.ec_inverse_square_scaling", std::fabs(ratio - 4.0),
                              0.8, fmt_ctx({{"dtau", dtau}, {"ell_lo", 100}, {"ell_hi", 200}})));
    }
    // coincidence limits of the regular parts are finite
    {
        const double vec = std::abs(
            kernel_regular_part(EinsteinCylinder{2.0, 0.01}, 0.0, eps).value);
        const double vads = std::abs(kernel_regular_part(PoincareAdS2{0.05}, 0.0, eps).value);
        const bool finite = std::isfinite(vec) && std::isfinite(vads);
        out.push_back(outcome("kernel_limits.regular_parts_finite_at_coincidence",
                              finite ? 0.0 : 1.0, 0.5,
                              fmt_ctx({{"ec_value", vec}, {"ads2_value", vads}})));
    }
    return out;
}

std::vector<CheckOutcome> check_ec_image_identity(double L, std::span<const double> dtau_grid,
                                                  int n_max) {
    std::vector<CheckOutcome> out;
    const double eps = 1e-10;
    const EinsteinCylinder g{L, 0.0};
    double worst = 0.0;
    for (double dtau : dtau_grid) {
        const auto osc = kernel_ec_oscillator(dtau, g, eps).value;
        const auto img = ec_image_sum_oracle(dtau, L, n_max, eps);
        worst = std::max(worst, std::abs(osc - img));
    }
    out.push_back(outcome("ec_image.osc_equals_image_sum", worst, 1e-8,
                          fmt_ctx({{"L", L}, {"n_max", double(n_max)}})));

    // tail handling makes the result insensitive to the truncation index
    const double v_full = std::abs(ec_image_sum_oracle(dtau_grid[0], L, n_max, eps) -
                                   ec_image_sum_oracle(dtau_grid[0], L, n_max / 2, eps));
    out.push_back(outcome("ec_image.n_max_sensitivity", v_full, 1e-6,
                          fmt_ctx({{"L", L}, {"n_hi", double(n_max)}, {"n_lo", double(n_max / 2)}})));
    return out;
}

std::vector<CheckOutcome> check_tm_consistency(const ValidationConfig& vcfg) {
    std::vector<CheckOutcome> out;
    // response-level cross-checks run at the fast-regime point (w=0.05, ell=100);
    // the kernel-level identities use the slow machine (w=0.05, ell=10), whose
    // image terms carry weight and stay well-conditioned
    const TimeMachine tm{std::exp(0.05 * 100.0), 100.0};
    const TimeMachine tm_slow{std::exp(0.05 * 10.0), 10.0};
    const TrajectoryParams traj{1.0};
    const double eps = 1e-3;

    // scale invariance W(x, A^n x') = W(A^-n x, x') of the image terms: the
    // reindex form term(a A; xi, xi') = term(a; xi, A xi')
    {
        double worst = 0.0;
        const double W = tm_slow.W();
        for (int n : {-2, -1, 0, 1, 3}) {
            const double a = detail::warp_power(tm_slow.A, n);
            const auto lhs = detail::tm_image_term(a * tm_slow.A, W, 1.0, 1.0, 0.4, -0.3, eps);
            const auto rhs = detail::tm_image_term(a, W, 1.0, tm_slow.A, 0.4, -0.3, eps);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        }
        out.push_back(outcome("tm.scale_invariance_reindex", worst, 1e-12,
                              fmt_ctx({{"A", tm_slow.A}, {"ell", tm_slow.L}})));
    }
    // xi-invariance at the kernel level
    {
        double worst = 0.0;
        for (double xi : {1.0, 7.3}) {
            const auto v = kernel_tm_term(2, 0.5, -0.5, tm_slow, {xi}, eps).value;
            const auto ref = kernel_tm_term(2, 0.5, -0.5, tm_slow, {1.0}, eps).value;
            worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
        }
        out.push_back(outcome("tm.kernel_xi_invariance", worst, 1e-12,
                              fmt_ctx({{"A", tm_slow.A}, {"ell", tm_slow.L}})));
    }
    // Hermitian pairing term_{-n}(tau', tau) = conj(term_n(tau, tau'))
    {
        double worst = 0.0;
        for (int n : {1, 2, 5}) {
            const auto lhs = kernel_tm_term(-n, -0.2, 0.7, tm_slow, traj, eps).value;
            const auto rhs = std::conj(kernel_tm_term(n, 0.7, -0.2, tm_slow, traj, eps).value);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        out.push_back(outcome("tm.pair_hermiticity", worst, 1e-12,
                              fmt_ctx({{"A", tm_slow.A}, {"ell", tm_slow.L}})));
    }
    // index-shift invariance of partial sums with premapped arguments
    {
        const int N = 6;
        const double W = tm_slow.W();
        std::complex<double> shifted = 0.0, direct = 0.0;
        for (int n = -N; n <= N; ++n) {
            const double a = detail::warp_power(tm_slow.A, n);
            shifted += detail::tm_image_term(a, W, 1.0, tm_slow.A, 0.4, 0.1, eps);
            direct += detail::tm_image_term(a * tm_slow.A, W, 1.0, 1.0, 0.4, 0.1, eps);
        }
        const double gap = std::abs(shifted - direct);
        out.push_back(outcome("tm.index_shift_partial_sums", gap, 1e-12,
                              fmt_ctx({{"N", double(N)}, {"A", tm_slow.A}})));
    }

    if (!vcfg.fast) {
        // n = 0 image term vs the AdS2 response, two independent numerical routes
        DetectorConfig det{0.1};
        QuadratureConfig qcfg = vcfg.quad;
        const auto ads = response_ads2(det, {tm.W()}, qcfg);
        TimeMachineOptions opts;
        opts.N = 1;
        const auto tmres = response_time_machine(det, tm, qcfg, opts);
        double p0 = 0.0;
        for (const auto& [n, v] : tmres.image_sum->per_term)
            if (n == 0) p0 = v.real();
        const double rel = std::fabs(p0 - ads.probability) / ads.probability;
        out.push_back(outcome("tm.n0_matches_ads2_response", rel, 1e-4,
                              fmt_ctx({{"omega", 0.1}, {"w", 0.05}, {"ell", 100}})));

        // brute-force sum (no conjugate-pair shortcut, complex integrands
        // everywhere) must agree and come out real
        const double S = 13.0;
        std::vector<std::pair<double, std::complex<double>>> samples;
        const std::vector<double> ladder =
            qcfg.eps_ladder.empty() ? default_eps_ladder(1.0) : qcfg.eps_ladder;
        for (double e : ladder) {
            std::complex<double> total = 0.0;
            for (int n = -3; n <= 3; ++n) {
                const double a = detail::warp_power(tm.A, n);
                const auto f = [&](double tau, double tau2) {
                    const auto k = detail::tm_image_term(a, tm.W(), 1.0, 1.0, tau, tau2, e);
                    return std::exp(-tau * tau - tau2 * tau2) *
                           std::exp(std::complex<double>(0.0, -0.1 * (tau - tau2))) * k;
                };
                total += integrate_2d(f, {-S, S, -S, S}, qcfg);
            }
            samples.emplace_back(e, total);
        }
        const auto rep = extrapolate_epsilon(samples);
        TimeMachineOptions o3;
        o3.N = 3;
        const auto prod = response_time_machine(det, tm, qcfg, o3);
        out.push_back(outcome("tm.bruteforce_matches_production",
                              std::abs(rep.extrapolated.real() - prod.probability), 1e-7,
                              fmt_ctx({{"N", 3}, {"omega", 0.1}})));
        out.push_back(outcome("tm.bruteforce_imaginary_residue",
                              std::fabs(rep.extrapolated.imag()), 1e-8,
                              fmt_ctx({{"N", 3}, {"omega", 0.1}})));
    }

    // Jacobi elliptic theta cross-check: representation lives in a companion
    // construction that is not part of this artifact; slot reports as skipped.
    out.push_back(outcome("tm.jacobi_theta_crosscheck_disabled", 0.0, 1.0, "disabled"));
    return out;
}

std::vector<std::string> validation_check_names() {
    return {
        "kernel_limits.ads2_w2_scaling",
        "kernel_limits.ec_inverse_square_scaling",
        "kernel_limits.regular_parts_finite_at_coincidence",
        "ec_image.osc_equals_image_sum",
        "ec_image.n_max_sensitivity",
        "tm.scale_invariance_reindex",
        "tm.kernel_xi_invariance",
        "tm.pair_hermiticity",
        "tm.index_shift_partial_sums",
        "tm.n0_matches_ads2_response",
        "tm.bruteforce_matches_production",
        "tm.bruteforce_imaginary_residue",
        "tm.jacobi_theta_crosscheck_disabled",
        "extrapolation.linear_exact",
        "contour.radius_invariance",
    };
}

std::vector<CheckOutcome> run_all(const ValidationConfig& cfg) {
    const auto group_selected = [&cfg](const char* prefix) {
        if (cfg.only.empty()) return true;
        for (const auto& name : validation_check_names())
            if (name.rfind(prefix, 0) == 0)
                for (const auto& pat : cfg.only)
                    if (name.find(pat) != std::string::npos) return true;
        return false;
    };

    std::vector<CheckOutcome> all;
    auto add = [&all](std::vector<CheckOutcome> v) {
        for (auto& c : v) all.push_back(std::move(c));
    };

    if (group_selected("kernel_limits")) add(check_kernel_limits());
    if (group_selected("ec_image")) {
        const double grid[] = {0.3, 1.0};
        add(check_ec_image_identity(2.0, grid, 50));
    }
    if (group_selected("tm")) add(check_tm_consistency(cfg));

    if (group_selected("extrapolation")) {
        // extrapolation sanity: linear samples recovered exactly
        std::vector<std::pair<double, std::complex<double>>> s = {
            {0.4, 1.4}, {0.2, 1.2}, {0.1, 1.1}};
        const auto rep = extrapolate_epsilon(s);
        all.push_back(outcome("extrapolation.linear_exact",
                              std::abs(rep.extrapolated - std::complex<double>(1.0)), 1e-13,
                              "f(eps)=1+eps"));
    }
    if (group_selected("contour")) {
        // contour invariance on an analytic integrand with one simple pole
        const auto f = [](std::complex<double> u) {
            return std::exp(-u * u) / (u - std::complex<double>(0.3, 0.0));
        };
        QuadratureConfig q = cfg.quad;
        q.detour_radius = 0.05;
        const auto v1 = integrate_with_pole_detour(f, -2.0, 2.0, std::vector<double>{0.3}, q);
        q.detour_radius = 0.1;
        const auto v2 = integrate_with_pole_detour(f, -2.0, 2.0, std::vector<double>{0.3}, q);
        all.push_back(outcome("contour.radius_invariance", std::abs(v1 - v2), 1e-8,
                              "pole=0.3 radii={0.05,0.1}"));
    }

    if (!cfg.only.empty()) {
        std::vector<CheckOutcome> filtered;
        for (auto& c : all)
            for (const auto& pat : cfg.only)
                if (c.name.find(pat) != std::string::npos) {
                    filtered.push_back(std::move(c));
                    break;
                }
        return filtered;
    }
    return all;
}

void write_jsonl(std::ostream& os, const std::vector<CheckOutcome>& outcomes) {
    os.precision(17);
    for (const auto& c : outcomes) {
        os << "{\"name\":\"" << c.name << "\",\"measured\":" << c.measured
           << ",\"bound\":" << c.bound << ",\"passed\":" << (c.passed ? "true" : "false")
           << ",\"context\":\"" << c.context << "\"}\n";
    }
}

}  // namespace ctcprobe
