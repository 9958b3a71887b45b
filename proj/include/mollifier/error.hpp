#pragma once

#include <stdexcept>
#include <string>

namespace mollifier {

/// Invalid user input: malformed config, violated parameter constraint.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to deliver a trustworthy value
/// (quadrature did not converge, singular linear system, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mollifier
