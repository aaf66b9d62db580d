#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pmod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct InvalidCurve : Error {
    using Error::Error;
};

struct InvalidDensity : Error {
    using Error::Error;
};

/// Adaptive refinement gave up; `partial` is the best estimate reached.
struct NonConvergence : Error {
    NonConvergence(const std::string& what, double partial_value, double error_estimate)
        : Error(what), partial(partial_value), error(error_estimate) {}
    double partial;
    double error;
};

struct DivergentEnergy : Error {
    DivergentEnergy(const std::string& what, double partial_value)
        : Error(what), partial(partial_value) {}
    double partial;
};

/// ODE step size collapsed; carries the last accepted state.
struct SingularityError : Error {
    SingularityError(const std::string& what, double t, std::vector<double> y)
        : Error(what), last_t(t), last_state(std::move(y)) {}
    double last_t;
    std::vector<double> last_state;
};

struct OrientationError : Error {
    using Error::Error;
};

struct DegenerateError : Error {
    using Error::Error;
};

struct DisconnectedError : Error {
    using Error::Error;
};

struct UnknownScenario : Error {
    using Error::Error;
};

}  // namespace pmod
