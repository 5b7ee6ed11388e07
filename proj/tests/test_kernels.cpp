#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ctcprobe/kernels.hpp"

using namespace ctcprobe;
using std::numbers::pi;
using Cx = std::complex<double>;

TEST_CASE("Minkowski kernel") {
    // dtau = 1, eps -> 0: -1/(2 pi)
    CHECK(kernel_minkowski(1.0, 1e-9).value.real() ==
          doctest::Approx(-1.0 / (2.0 * pi)).epsilon(1e-12));
    // coincidence limit: -1/(2 pi (-i eps)^2) = +1/(2 pi eps^2), real positive
    const auto v = kernel_minkowski(0.0, 1e-3).value;
    CHECK(v.real() == doctest::Approx(1.0 / (2.0 * pi * 1e-6)).epsilon(1e-12));
    CHECK(std::fabs(v.imag()) < 1e-6 * v.real());
    // Hermiticity at finite eps
    const auto a = kernel_minkowski(2.0 - 1.0, 1e-2).value;
    const auto b = kernel_minkowski(1.0 - 2.0, 1e-2).value;
    CHECK(std::abs(a - std::conj(b)) < 1e-15 * std::abs(a));
    CHECK_THROWS_AS(kernel_minkowski(1.0, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(kernel_minkowski(1.0, -1e-3), InvalidParameterError);
}

TEST_CASE("Einstein cylinder kernel") {
    const EinsteinCylinder g{2.0, 0.01};
    // periodicity
    const auto k1 = kernel_einstein_cylinder(0.3, g, 1e-4).value;
    const auto k2 = kernel_einstein_cylinder(0.3 + g.L, g, 1e-4).value;
    CHECK(std::abs(k1 - k2) < 1e-12 * std::abs(k1));
    // zero-mode part
    CHECK(kernel_ec_zero_mode(g) == doctest::Approx(0.00125).epsilon(1e-15));
    // oscillator + zero mode = full
    const auto osc = kernel_ec_oscillator(0.3, g, 1e-4).value;
    CHECK(std::abs(osc + kernel_ec_zero_mode(g) - k1) < 1e-15 * std::abs(k1));
    // L -> infinity approaches Minkowski
    const EinsteinCylinder big{1e4, 0.01};
    const auto ec = kernel_einstein_cylinder(1.0, big, 1e-8).value;
    const auto mk = kernel_minkowski(1.0, 1e-8).value;
    CHECK(std::abs(ec - mk) < 1e-6 * std::abs(mk));
    CHECK_THROWS_AS(kernel_einstein_cylinder(0.3, EinsteinCylinder{-1.0, 0.0}, 1e-4),
                    InvalidParameterError);
}

TEST_CASE("AdS2 kernel") {
    // W -> 0 reduces exactly to Minkowski (the 16/16 factor)
    const auto ads0 = ads2_kernel_at(Cx(1.0, -1e-6), PoincareAdS2{1e-12});
    const auto mk = minkowski_kernel_at(Cx(1.0, -1e-6));
    CHECK(std::abs(ads0 - mk) < 1e-12 * std::abs(mk));
    // small-dtau leading behaviour matches the Minkowski Laurent term
    const auto ads = kernel_ads2(1e-6, PoincareAdS2{0.05}, 1e-12).value;
    const auto mk2 = kernel_minkowski(1e-6, 1e-12).value;
    CHECK(std::abs(ads - mk2) < 1e-10 * std::abs(mk2));
    // pole of the eps -> 0 kernel at dtau = 2/W = 40 for W = 0.05
    const double denom_at_pole = std::abs(4.0 - 0.05 * 0.05 * 40.0 * 40.0);
    CHECK(denom_at_pole < 1e-12);
    const auto near_pole = kernel_ads2(40.0, PoincareAdS2{0.05}, 1e-8).value;
    CHECK(std::abs(near_pole) > 1e10);
    CHECK_THROWS_AS(kernel_ads2(1.0, PoincareAdS2{0.0}, 1e-6), InvalidParameterError);
    CHECK_THROWS_AS(kernel_ads2(1.0, PoincareAdS2{-0.1}, 1e-6), InvalidParameterError);
}

TEST_CASE("stationary kernels are Hermitian at random (tau, tau', eps)") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> tau(-3.0, 3.0);
    std::uniform_real_distribution<double> eps(1e-5, 1e-2);
    const EinsteinCylinder ec{2.0, 0.01};
    const PoincareAdS2 ads{0.3};
    for (int i = 0; i < 200; ++i) {
        const double t1 = tau(rng), t2 = tau(rng), e = eps(rng);
        const auto m1 = kernel_minkowski(t1 - t2, e).value;
        const auto m2 = kernel_minkowski(t2 - t1, e).value;
        CHECK(std::abs(m1 - std::conj(m2)) <= 1e-12 * std::abs(m1));
        const auto e1 = kernel_einstein_cylinder(t1 - t2, ec, e).value;
        const auto e2 = kernel_einstein_cylinder(t2 - t1, ec, e).value;
        CHECK(std::abs(e1 - std::conj(e2)) <= 1e-12 * std::abs(e1));
        const auto a1 = kernel_ads2(t1 - t2, ads, e).value;
        const auto a2 = kernel_ads2(t2 - t1, ads, e).value;
        CHECK(std::abs(a1 - std::conj(a2)) <= 1e-12 * std::abs(a1));
    }
}

TEST_CASE("time-machine image terms") {
    const TimeMachine tm{1.5, 10.0};  // W = ln(1.5)/10
    const TrajectoryParams traj{1.0};
    CHECK(tm.W() == doctest::Approx(std::log(1.5) / 10.0).epsilon(1e-15));

    SUBCASE("n = 0 reduces to the AdS2 kernel at finite eps") {
        const auto t0 = kernel_tm_term(0, 0.3, -0.2, tm, traj, 1e-2).value;
        const auto ads = kernel_ads2(0.5, PoincareAdS2{tm.W()}, 1e-2).value;
        CHECK(std::abs(t0 - ads) < 1e-12 * std::abs(ads));
    }

    SUBCASE("xi-independence") {
        const auto v1 = kernel_tm_term(2, 0.5, -0.5, tm, {1.0}, 1e-3).value;
        const auto v2 = kernel_tm_term(2, 0.5, -0.5, tm, {7.3}, 1e-3).value;
        CHECK(std::abs(v1 - v2) < 1e-12 * std::abs(v1));
    }

    SUBCASE("frozen regression values (independent numerical differentiation)") {
        const auto v1 = kernel_tm_term(1, 0.4, 0.1, tm, traj, 1e-2).value;
        CHECK(v1.real() == doctest::Approx(-1.509055212353837e-3).epsilon(1e-12));
        CHECK(v1.imag() == doctest::Approx(1.935288369835586e-7).epsilon(1e-9));
        const auto v2 = kernel_tm_term(2, 0.5, -0.5, tm, traj, 1e-2).value;
        CHECK(v2.real() == doctest::Approx(-3.241306657343029e-4).epsilon(1e-12));
        CHECK(v2.imag() == doctest::Approx(6.201951787062163e-8).epsilon(1e-9));
    }

    SUBCASE("scale-invariance: premapping the unprimed point by A^-n") {
        // W(x, A^n x') = W(A^-n x, x'): evaluate the premapped route through the
        // general evaluator and compare
        const double W = tm.W();
        for (int n : {-3, -1, 1, 2}) {
            const double a = detail::warp_power(tm.A, n);
            const auto direct = detail::tm_image_term(a, W, 1.0, 1.0, 0.4, -0.3, 1e-3);
            const auto premapped = detail::tm_image_term(1.0, W, 1.0 / a, 1.0, 0.4, -0.3, 1e-3);
            CHECK(std::abs(direct - premapped) <= 1e-12 * std::abs(direct));
        }
    }

    SUBCASE("pair Hermiticity and full-sum Hermiticity at fixed eps") {
        for (int n : {1, 2, 4}) {
            const auto lhs = kernel_tm_term(-n, -0.2, 0.6, tm, traj, 5e-3).value;
            const auto rhs = std::conj(kernel_tm_term(n, 0.6, -0.2, tm, traj, 5e-3).value);
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
        }
        const auto s1 = kernel_tm_sum(8, 0.6, -0.2, tm, traj, 5e-3).value;
        const auto s2 = kernel_tm_sum(8, -0.2, 0.6, tm, traj, 5e-3).value;
        CHECK(std::abs(s1 - std::conj(s2)) < 1e-13 * std::abs(s1));
    }

    SUBCASE("the full sum is not stationary") {
        const TimeMachine tm2{2.0, 10.0};
        const auto s1 = kernel_tm_sum(10, 0.4, 0.1, tm2, traj, 1e-3).value;
        const auto s2 = kernel_tm_sum(10, 0.3, 0.0, tm2, traj, 1e-3).value;
        CHECK(std::abs(s1 - s2) > 1e-6 * std::abs(s1));
    }

    SUBCASE("chronology and parameter validation") {
        const double window = 1.0 / tm.W();  // ~24.66
        CHECK_THROWS_AS(kernel_tm_term(0, window * 1.01, 0.0, tm, traj, 1e-3),
                        ChronologyViolationError);
        CHECK_THROWS_AS(kernel_tm_term(0, 0.0, -window * 1.01, tm, traj, 1e-3),
                        ChronologyViolationError);
        CHECK_THROWS_AS(kernel_tm_term(0, 0.0, 0.0, TimeMachine{1.0, 10.0}, traj, 1e-3),
                        InvalidParameterError);
        CHECK_THROWS_AS(kernel_tm_term(0, 0.0, 0.0, TimeMachine{0.5, 10.0}, traj, 1e-3),
                        InvalidParameterError);
        CHECK_THROWS_AS(kernel_tm_term(0, 0.0, 0.0, tm, traj, 0.0), InvalidParameterError);
    }
}

TEST_CASE("regular parts") {
    SUBCASE("EC: finite coincidence value -pi/6L^2 + gamma/2L^2") {
        const EinsteinCylinder g{2.0, 0.01};
        const auto v = kernel_regular_part(g, 0.0, 1e-9).value;
        const double expected = -pi / (6.0 * g.L * g.L) + g.gamma / (2.0 * g.L * g.L);
        CHECK(v.real() == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("EC: cancellation-free form is continuous across the small-|dtau| region") {
        const EinsteinCylinder g{2.0, 0.0};
        // compare against the 6th-order series around coincidence
        const double L = g.L;
        for (double dt : {1e-5, 1e-4, 1e-3, 2e-3, 1e-2}) {
            const double series = -pi / (6.0 * L * L) -
                                  std::pow(pi, 3) * dt * dt / (30.0 * std::pow(L, 4)) -
                                  std::pow(pi, 5) * std::pow(dt, 4) / (189.0 * std::pow(L, 6)) -
                                  std::pow(pi, 7) * std::pow(dt, 6) / (1350.0 * std::pow(L, 8));
            const double cur = ec_regular_at(Cx(dt, 0.0), g).real();
            CHECK(cur == doctest::Approx(series).epsilon(1e-10));
        }
        // direct high-precision reference at a safely large dtau
        const double x = pi * 0.5 / g.L;
        const double ref = -pi / (2.0 * g.L * g.L) *
                               (1.0 / (std::sin(x) * std::sin(x)) - 1.0 / (x * x));
        CHECK(ec_regular_at(Cx(0.5, 0.0), g).real() == doctest::Approx(ref).epsilon(1e-10));
    }
    SUBCASE("AdS2: coincidence value W^2/8pi and flat limit") {
        const PoincareAdS2 g{0.05};
        const auto v = kernel_regular_part(g, 0.0, 1e-9).value;
        CHECK(v.real() == doctest::Approx(g.W * g.W / (8.0 * pi)).epsilon(1e-10));
        // series coefficients of the closed form: + (3/32pi) W^4 z^2
        const double z = 0.3;
        const double expected = g.W * g.W / (8.0 * pi) +
                                3.0 * std::pow(g.W, 4) * z * z / (32.0 * pi) +
                                5.0 * std::pow(g.W, 6) * std::pow(z, 4) / (128.0 * pi);
        CHECK(kernel_regular_part(g, z, 1e-10).value.real() ==
              doctest::Approx(expected).epsilon(1e-8));
    }
    SUBCASE("EC regular part -> gamma/2L^2 -> 0 as L grows") {
        const EinsteinCylinder g{1e4, 0.01};
        const auto v = kernel_regular_part(g, 1.0, 1e-10).value;
        CHECK(std::abs(v) < 1e-8);
    }
    SUBCASE("Minkowski split is undefined unless explicitly allowed") {
        CHECK_THROWS_AS(kernel_regular_part(Minkowski{}, 1.0, 1e-6), UndefinedSplitError);
        CHECK(kernel_regular_part(Minkowski{}, 1.0, 1e-6, true).value == Cx(0.0));
    }
}

TEST_CASE("EC oscillator equals the flat image sum (spot check at |n| <= 50)") {
    // direct truncation without tail: agreement at the 1/(pi L^2 n_max) level;
    // the validation suite carries the tail-corrected 1e-8 version
    const EinsteinCylinder g{2.0, 0.0};
    const double eps = 1e-8;
    const Cx z(0.3, -eps);
    Cx img = minkowski_kernel_at(z);
    for (int n = 1; n <= 50; ++n)
        img += minkowski_kernel_at(z - 2.0 * n) + minkowski_kernel_at(z + 2.0 * n);
    const auto osc = kernel_ec_oscillator(0.3, g, eps).value;
    const double tail_scale = 1.0 / (pi * g.L * g.L * 50);
    CHECK(std::abs(osc - img) < tail_scale * 1.05);
    CHECK(std::abs(osc - img) > tail_scale * 0.5);  // the gap really is the tail
}

TEST_CASE("IR limit rates: O(W^2) and O(1/L^2) at fixed dtau") {
    const double eps = 1e-9;
    const auto mk = kernel_minkowski(1.0, eps).value;
    const double d_ads_1 = std::abs(kernel_ads2(1.0, {0.02}, eps).value - mk);
    const double d_ads_2 = std::abs(kernel_ads2(1.0, {0.01}, eps).value - mk);
    CHECK(d_ads_1 / d_ads_2 == doctest::Approx(4.0).epsilon(0.05));
    const double d_ec_1 = std::abs(kernel_einstein_cylinder(1.0, {100.0, 0.0}, eps).value - mk);
    const double d_ec_2 = std::abs(kernel_einstein_cylinder(1.0, {200.0, 0.0}, eps).value - mk);
    CHECK(d_ec_1 / d_ec_2 == doctest::Approx(4.0).epsilon(0.05));
}
