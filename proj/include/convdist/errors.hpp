#pragma once

#include <stdexcept>
#include <string>

namespace convdist {

// Bad inputs: malformed configs, mismatched ground spaces, events that are
// not representable with the requested parameters. CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures: the min-norm-point solver not converging within its
// iteration cap, singular corral systems. CLI exit code 3.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace convdist
