#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dqm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct DegeneracyError : Error { using Error::Error; };
struct ToleranceNotMet : Error {
    double achieved;
    ToleranceNotMet(const std::string& what, double est) : Error(what), achieved(est) {}
};

// optional warning sink threaded through the numerical kernels
struct Diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    bool empty() const { return warnings.empty(); }
};

inline void warn(Diagnostics* d, std::string msg) {
    if (d) d->warn(std::move(msg));
}

}  // namespace dqm
