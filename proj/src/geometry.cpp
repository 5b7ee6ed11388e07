#include "ctcprobe/geometry.hpp"

#include <cmath>

namespace ctcprobe {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParameterError(msg);
}

}  // namespace

void validate(const Minkowski&) {}

void validate(const EinsteinCylinder& g) {
    require(std::isfinite(g.L) && g.L > 0.0, "Einstein cylinder: circumference L must be > 0");
    require(std::isfinite(g.gamma) && g.gamma >= 0.0,
            "Einstein cylinder: zero-mode regulator gamma must be >= 0");
}

void validate(const PoincareAdS2& g) {
    require(std::isfinite(g.W) && g.W > 0.0, "Poincare-AdS2: inverse length W must be > 0");
}

void validate(const TimeMachine& g) {
    require(std::isfinite(g.L) && g.L > 0.0, "time machine: proper period L must be > 0");
    // A = 1 is the flat cylinder, a different geometry; it is rejected rather
    // than silently reduced because W = ln(1)/L = 0 degenerates the patch.
    require(std::isfinite(g.A) && g.A > 1.0,
            "time machine: warp parameter A must be > 1 (use the Einstein cylinder for A = 1)");
}

void validate(const GeometryParams& g) {
    std::visit([](const auto& gg) { validate(gg); }, g);
}

void validate(const TrajectoryParams& t) {
    require(std::isfinite(t.xi) && t.xi > 0.0, "trajectory: static radius xi must be > 0");
}

void validate(const DetectorConfig& d) {
    require(std::isfinite(d.omega), "detector: omega must be finite");
    // All inputs are dimensionless in units of the switching width; the library
    // works in the internal unit T = 1 throughout.
    require(d.T == 1.0, "detector: T is the internal unit and must be 1");
    require(std::isfinite(d.xi) && d.xi > 0.0, "detector: xi must be > 0");
    require(std::isfinite(d.lambda), "detector: lambda must be finite");
}

std::string geometry_name(const GeometryParams& g) {
    struct Namer {
        std::string operator()(const Minkowski&) const { return "minkowski"; }
        std::string operator()(const EinsteinCylinder&) const { return "ec"; }
        std::string operator()(const PoincareAdS2&) const { return "ads2"; }
        std::string operator()(const TimeMachine&) const { return "tm"; }
    };
    return std::visit(Namer{}, g);
}

}  // namespace ctcprobe
