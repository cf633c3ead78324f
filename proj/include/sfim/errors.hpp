#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sfim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid system / scheme / training configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Caller broke a documented precondition.
struct ContractViolation : Error {
    using Error::Error;
};

// Linear-algebra failure (non-finite values, ill conditioning).
struct NumericError : Error {
    NumericError(const std::string& msg, double cond_estimate = 0.0)
        : Error(msg), cond(cond_estimate) {}
    double cond;
};

// ML joint search space exceeds the configured cap.
struct InfeasibleError : Error {
    using Error::Error;
};

// A space-frequency support that no LUT entry pair can produce.
// Carries the closest legal support for diagnostics.
struct DemapError : Error {
    DemapError(const std::string& msg,
               std::vector<int> subs,
               std::vector<std::vector<int>> ants)
        : Error(msg),
          nearest_subs(std::move(subs)),
          nearest_ants(std::move(ants)) {}
    std::vector<int> nearest_subs;                 // 0-based subcarriers
    std::vector<std::vector<int>> nearest_ants;    // per active sub, 0-based
};

}  // namespace sfim
