#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ctcprobe {

/// Bad geometry, detector, or quadrature parameters (usage errors).
class InvalidParameterError : public std::invalid_argument {
  public:
    explicit InvalidParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Proper times (or switching support) reach past the no-CTC window |tau| <= 1/W.
class ChronologyViolationError : public std::domain_error {
  public:
    explicit ChronologyViolationError(const std::string& what) : std::domain_error(what) {}
};

/// Asking for the regular part of the Minkowski kernel, which is identically zero.
class UndefinedSplitError : public std::logic_error {
  public:
    explicit UndefinedSplitError(const std::string& what) : std::logic_error(what) {}
};

/// Adaptive integration ran out of subdivisions. Carries the best estimate
/// and the error bound it reached.
class ConvergenceFailure : public std::runtime_error {
  public:
    ConvergenceFailure(const std::string& what, std::complex<double> best_estimate,
                       double error_bound)
        : std::runtime_error(what), best(best_estimate), bound(error_bound) {}

    std::complex<double> best;
    double bound;
};

}  // namespace ctcprobe
