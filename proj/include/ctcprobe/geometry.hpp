#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "ctcprobe/errors.hpp"

namespace ctcprobe {

// All times are measured in units of the switching width T (T = 1 internally).
// Users hand in the dimensionless parameters omega = Omega*T, w = W*T,
// ell = L/T, gamma, and A (or delta = A - 1).

struct Minkowski {};

struct EinsteinCylinder {
    double L = 0.0;        ///< circumference (units of T)
    double gamma = 0.01;   ///< zero-mode regulator, >= 0
};

struct PoincareAdS2 {
    double W = 0.0;        ///< inverse AdS length (units of 1/T)
};

struct TimeMachine {
    double A = 0.0;        ///< warp parameter, > 1
    double L = 0.0;        ///< proper period (units of T)

    /// Derived inverse AdS length of the covering patch, W = ln(A)/L.
    double W() const { return std::log(A) / L; }
};

using GeometryParams = std::variant<Minkowski, EinsteinCylinder, PoincareAdS2, TimeMachine>;

/// Static trajectory zeta_pm(tau) = xi (1 +- W tau). The response is
/// xi-independent; xi is kept as an input so the invariance is testable.
struct TrajectoryParams {
    double xi = 1.0;
};

struct DetectorConfig {
    double omega = 0.0;    ///< dimensionless gap Omega*T
    double lambda = 1.0;   ///< coupling; probabilities are reported as P/lambda^2
    double T = 1.0;        ///< switching width (internal unit)
    double xi = 1.0;       ///< trajectory radius
};

void validate(const Minkowski&);
void validate(const EinsteinCylinder& g);
void validate(const PoincareAdS2& g);
void validate(const TimeMachine& g);
void validate(const GeometryParams& g);
void validate(const TrajectoryParams& t);
void validate(const DetectorConfig& d);

std::string geometry_name(const GeometryParams& g);

}  // namespace ctcprobe
