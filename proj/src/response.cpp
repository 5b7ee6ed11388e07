#include "ctcprobe/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctcprobe/parallel.hpp"
#include "ctcprobe/special.hpp"

namespace ctcprobe {

namespace {

constexpr double kPi = std::numbers::pi;

// Gaussian mass fraction of chi^2 outside |tau| > c (T = 1): erfc(sqrt(2) c).
double clipped_mass_fraction(double c) {
    return ctcprobe::erfc(std::sqrt(2.0) * c);
}

std::vector<double> ladder_or_default(const QuadratureConfig& cfg) {
    return cfg.eps_ladder.empty() ? default_eps_ladder(1.0) : cfg.eps_ladder;
}

// sqrt(pi/2) * integral over the detoured contour of
//   e^{-u^2/2} e^{-i omega u} * reg(u),
// with lower detours at the listed kernel poles inside the truncated support.
ResponseResult regular_split_response(const DetectorConfig& det,
                                      const std::function<Complex(Complex)>& reg,
                                      std::vector<double> pole_candidates,
                                      const QuadratureConfig& cfg) {
    cfg.validate();
    const double om = det.omega;
    double S = cfg.support_halfwidth;
    const double r = cfg.detour_radius;

    // keep detours clear of the endpoints
    for (int pass = 0; pass < 8; ++pass) {
        bool grew = false;
        for (double p : pole_candidates) {
            if (std::fabs(p) > S - 2.0 * r && std::fabs(p) < S + 2.0 * r) {
                S = std::fabs(p) + 4.0 * r;
                grew = true;
            }
        }
        if (!grew) break;
    }
    std::vector<double> poles;
    for (double p : pole_candidates)
        if (std::fabs(p) < S - 2.0 * r) poles.push_back(p);
    std::sort(poles.begin(), poles.end());

    const auto f = [om, &reg](Complex u) {
        return std::exp(-0.5 * u * u) * std::exp(Complex(0.0, -om) * u) * reg(u);
    };
    std::vector<double> seeds;
    for (double s = -6.0; s <= 6.0; s += 1.0) seeds.push_back(s);
    const Complex integral =
        std::sqrt(kPi / 2.0) * integrate_with_pole_detour(f, -S, S, poles, cfg, seeds);

    const ResponseResult mink = response_minkowski_closed(det);
    ResponseResult out;
    out.method = Method::regular_split;
    out.probability = mink.probability + integral.real();
    out.imaginary_residue = std::fabs(integral.imag());
    return out;
}

struct TermLadder {
    Complex extrapolated;
    double residual;
    std::vector<std::pair<double, Complex>> at_eps;
};

double tm_support(const TimeMachine& g, const QuadratureConfig& cfg) {
    const double W = g.W();
    double S = cfg.support_halfwidth;
    if (S > 1.0 / W) {
        S = 1.0 / W;
        const double mass = clipped_mass_fraction(S);
        if (mass >= 1e-6)
            throw ChronologyViolationError(
                "time machine: switching support exceeds the no-CTC window |tau| <= 1/W");
    }
    return S;
}

// One image term through the regulator ladder. n = 0 integrates the real part
// (exact by Hermiticity of the n = 0 kernel), n > 0 the complex integrand.
TermLadder tm_term_ladder(int n, const DetectorConfig& det, const TimeMachine& g,
                          const QuadratureConfig& cfg, double S,
                          const std::vector<double>& ladder) {
    const double W = g.W();
    const double a = detail::warp_power(g.A, n);
    const double om = det.omega;
    const double xi = det.xi;
    const Rect dom{-S, S, -S, S};

    std::vector<std::pair<double, Complex>> samples;
    samples.reserve(ladder.size());
    for (double eps : ladder) {
        Complex val;
        if (n == 0) {
            const auto f = [&](double tau, double tau2) {
                const Complex k = detail::tm_image_term(a, W, xi, xi, tau, tau2, eps);
                const double phase = -om * (tau - tau2);
                const double env = std::exp(-tau * tau - tau2 * tau2);
                return env * (std::cos(phase) * k.real() - std::sin(phase) * k.imag());
            };
            val = Complex(integrate_2d_real(f, dom, cfg), 0.0);
        } else {
            const auto f = [&](double tau, double tau2) {
                const Complex k = detail::tm_image_term(a, W, xi, xi, tau, tau2, eps);
                const double env = std::exp(-tau * tau - tau2 * tau2);
                return env * std::exp(Complex(0.0, -om * (tau - tau2))) * k;
            };
            val = integrate_2d(f, dom, cfg);
        }
        samples.emplace_back(eps, val);
    }
    ExtrapolationReport rep = extrapolate_epsilon(samples);
    return {rep.extrapolated, rep.residual, std::move(samples)};
}

// Conservative geometric bound on the dropped image tail from the magnitudes
// of the last computed pair terms. pair_noise carries each term's numerical
// uncertainty (extrapolation residual); terms below it are treated as zero
// rather than as evidence of a stalled tail.
std::pair<double, bool> tail_estimate(const std::vector<double>& pair_mags,
                                      const std::vector<double>& pair_noise) {
    const size_t m = pair_mags.size();
    if (m == 0) return {0.0, true};
    const double tN = pair_mags.back();
    if (tN == 0.0) return {0.0, true};
    const auto resolved = [&](size_t i) { return pair_mags[i] > 10.0 * pair_noise[i]; };
    if (!resolved(m - 1))
        return {13.5 * std::max(tN, pair_noise.back()), true};  // tail at the noise floor
    double rho = 0.9;  // conservative default when no decay ratio is available
    if (m >= 2 && resolved(m - 2)) {
        rho = tN / pair_mags[m - 2];
        if (m >= 3 && resolved(m - 3)) rho = std::max(rho, std::sqrt(tN / pair_mags[m - 3]));
        // terms not decaying at the cutoff: flag it and report a crude bound
        if (!(rho < 0.95)) return {tN * static_cast<double>(m), false};
    }
    return {1.5 * tN * rho / (1.0 - rho), true};
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::regular_split: return "regular_split";
        case Method::image_sum: return "image_sum";
        case Method::mode_sum_oracle: return "mode_sum_oracle";
        case Method::truncated_window: return "truncated_window";
    }
    return "unknown";
}

ResponseResult response_minkowski_closed(const DetectorConfig& det) {
    validate(det);
    const double om = det.omega;
    ResponseResult out;
    out.method = Method::closed_form;
    out.probability =
        0.5 * (std::exp(-0.5 * om * om) -
               std::sqrt(kPi / 2.0) * om * ctcprobe::erfc(om / std::sqrt(2.0)));
    return out;
}

ResponseResult response_minkowski_integral(const DetectorConfig& det,
                                           const QuadratureConfig& cfg) {
    validate(det);
    cfg.validate();
    const double om = det.omega;
    // |chi~(omega + k)|^2 = pi e^{-(omega+k)^2/2} for the unit-width Gaussian
    const auto f = [om](double k) { return k / (2.0 * kPi) * kPi * std::exp(-0.5 * (om + k) * (om + k)); };
    const double kmax = std::max(0.0, -om) + 42.0;
    std::vector<double> seeds;
    for (double s = 1.0; s < kmax; s += 1.0) seeds.push_back(s);
    ResponseResult out;
    out.method = Method::mode_sum_oracle;
    out.probability = integrate_1d_real(f, 0.0, kmax, cfg, seeds);
    return out;
}

ResponseResult response_einstein_cylinder(const DetectorConfig& det, const EinsteinCylinder& g,
                                          const QuadratureConfig& cfg) {
    validate(det);
    validate(g);
    // image poles of the oscillator kernel at u = n L, n != 0
    std::vector<double> poles;
    const double S = cfg.support_halfwidth;
    for (int n = 1; n * g.L < S + 1.0 + 4.0 * cfg.detour_radius; ++n) {
        poles.push_back(n * g.L);
        poles.push_back(-n * g.L);
    }
    auto reg = [&g](Complex u) { return ec_regular_at(u, g); };
    return regular_split_response(det, reg, std::move(poles), cfg);
}

ResponseResult response_ads2(const DetectorConfig& det, const PoincareAdS2& g,
                             const QuadratureConfig& cfg) {
    validate(det);
    validate(g);
    std::vector<double> poles;
    const double p = 2.0 / g.W;
    if (p < cfg.support_halfwidth + 1.0 + 4.0 * cfg.detour_radius) {
        poles.push_back(-p);
        poles.push_back(p);
    }
    auto reg = [&g](Complex u) { return ads2_regular_at(u, g); };
    return regular_split_response(det, reg, std::move(poles), cfg);
}

ResponseResult response_time_machine(const DetectorConfig& det, const TimeMachine& g,
                                     const QuadratureConfig& cfg,
                                     const TimeMachineOptions& opts) {
    validate(det);
    validate(g);
    cfg.validate();
    if (!opts.auto_N && opts.N < 1)
        throw InvalidParameterError("time machine: image-sum truncation N must be >= 1");

    const double S = tm_support(g, cfg);
    const std::vector<double> ladder = ladder_or_default(cfg);
    constexpr int kAutoCap = 64;
    const int n_target = opts.auto_N ? kAutoCap : opts.N;

    std::vector<TermLadder> terms;  // index n = 0, 1, 2, ...
    const auto compute_range = [&](int from, int to) {
        const int count = to - from + 1;
        std::vector<TermLadder> chunk(count);
        parallel_for_indexed(count, std::max(1, opts.threads), [&](int i) {
            chunk[i] = tm_term_ladder(from + i, det, g, cfg, S, ladder);
        });
        for (auto& t : chunk) terms.push_back(std::move(t));
    };

    if (opts.auto_N) {
        compute_range(0, 2);
        int quiet = 0;
        while (static_cast<int>(terms.size()) - 1 < n_target && quiet < 2) {
            const int n = static_cast<int>(terms.size());
            compute_range(n, n);
            const double t = 2.0 * std::abs(terms.back().extrapolated);
            quiet = t < cfg.tail_tol ? quiet + 1 : 0;
        }
    } else {
        compute_range(0, n_target);
    }
    const int N = static_cast<int>(terms.size()) - 1;

    // P^(-n) = conj(P^(n)) for the symmetric regulator, so the sum
    // P^(0) + sum_n 2 Re P^(n) is real by construction.
    double prob = terms[0].extrapolated.real();
    double residual = terms[0].residual;
    std::vector<double> pair_mags, pair_noise;
    ImageSumReport report;
    report.truncation_N = N;
    report.per_term.reserve(2 * N + 1);
    for (int n = N; n >= 1; --n)
        report.per_term.emplace_back(-n, std::conj(terms[n].extrapolated));
    report.per_term.emplace_back(0, terms[0].extrapolated);
    for (int n = 1; n <= N; ++n) {
        report.per_term.emplace_back(n, terms[n].extrapolated);
        prob += 2.0 * terms[n].extrapolated.real();
        residual += 2.0 * terms[n].residual;
        pair_mags.push_back(2.0 * std::abs(terms[n].extrapolated));
        pair_noise.push_back(2.0 * terms[n].residual);
    }
    const auto [tail, converged] = tail_estimate(pair_mags, pair_noise);
    report.tail_estimate = tail;
    report.tail_converged = converged;

    ResponseResult out;
    out.method = Method::image_sum;
    out.probability = prob;
    out.imaginary_residue = 0.0;
    out.clipped_mass = S < cfg.support_halfwidth ? clipped_mass_fraction(S) : 0.0;
    out.image_sum = std::move(report);

    // ladder of the assembled sum, for diagnostics
    ExtrapolationReport total;
    total.values_at_eps.resize(ladder.size());
    for (size_t k = 0; k < ladder.size(); ++k) {
        Complex v = terms[0].at_eps[k].second;
        for (int n = 1; n <= N; ++n) v += 2.0 * terms[n].at_eps[k].second.real();
        total.values_at_eps[k] = {ladder[k], v};
    }
    total.extrapolated = Complex(prob, 0.0);
    total.residual = residual;
    out.extrapolation = std::move(total);
    return out;
}

ResponseResult response_ec_modesum_oracle(const DetectorConfig& det, const EinsteinCylinder& g,
                                          int n_max) {
    validate(det);
    validate(g);
    const double om = det.omega;
    const double ell = g.L;
    // tail factor e^{-(om + 2 pi n/ell)^2/2} < 1e-30 needs om + 2 pi n/ell > 11.8
    const int needed = static_cast<int>(std::ceil((11.8 - om) * ell / (2.0 * kPi))) + 1;
    if (n_max <= 0) {
        n_max = needed;
    } else if (n_max < needed) {
        throw InvalidParameterError("mode-sum oracle: n_max too small for the tail bound");
    }
    double sum = 0.0;
    for (int n = n_max; n >= 1; --n) {
        const double kn = 2.0 * kPi * n / ell;
        sum += 2.0 * kPi * kPi * n / (ell * ell) * std::exp(-0.5 * (om + kn) * (om + kn));
    }
    sum += g.gamma * kPi / (2.0 * ell * ell) * std::exp(-0.5 * om * om);
    ResponseResult out;
    out.method = Method::mode_sum_oracle;
    out.probability = sum;
    return out;
}

ResponseResult response_truncated_switching(const DetectorConfig& det, const GeometryParams& g,
                                            double eps_uv, const QuadratureConfig& cfg) {
    validate(det);
    validate(g);
    cfg.validate();
    if (!(eps_uv > 0.0))
        throw InvalidParameterError("truncated switching: eps_uv must be > 0");
    if (std::holds_alternative<TimeMachine>(g))
        throw InvalidParameterError(
            "truncated switching: stationary geometries only (use response_time_machine)");

    const auto kernel_at = [&g](Complex z) {
        if (std::holds_alternative<Minkowski>(g)) return minkowski_kernel_at(z);
        if (std::holds_alternative<EinsteinCylinder>(g))
            return ec_kernel_at(z, std::get<EinsteinCylinder>(g));
        return ads2_kernel_at(z, std::get<PoincareAdS2>(g));
    };
    const auto window = [eps_uv](double tau) {
        const auto theta = [eps_uv](double z) { return 0.5 * (1.0 + std::tanh(z / eps_uv)); };
        return theta(tau + 2.5) - theta(tau - 2.5);
    };
    const auto chi = [&window](double tau) { return window(tau) * std::exp(-tau * tau); };

    const double om = det.omega;
    const double S = std::min(cfg.support_halfwidth, 6.0);  // window kills |tau| > 2.5 + few eps_uv
    const Rect dom{-S, S, -S, S};
    const std::vector<double> ladder = ladder_or_default(cfg);

    std::vector<std::pair<double, Complex>> samples;
    for (double eps : ladder) {
        // stationary kernel + symmetric switching: the integrand's real part
        // integrates to the same value (Hermiticity), so integrate that
        const auto f = [&](double tau, double tau2) {
            const Complex k = kernel_at(Complex(tau - tau2, -eps));
            const double phase = -om * (tau - tau2);
            return chi(tau) * chi(tau2) *
                   (std::cos(phase) * k.real() - std::sin(phase) * k.imag());
        };
        samples.emplace_back(eps, Complex(integrate_2d_real(f, dom, cfg), 0.0));
    }
    ExtrapolationReport rep = extrapolate_epsilon(samples);

    ResponseResult out;
    out.method = Method::truncated_window;
    out.probability = rep.extrapolated.real();
    out.extrapolation = std::move(rep);
    return out;
}

}  // namespace ctcprobe
