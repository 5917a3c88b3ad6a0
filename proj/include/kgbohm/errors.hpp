#pragma once

#include <stdexcept>
#include <string>

namespace kgbohm {

/// Invalid scenario or parameter set; maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical guard tripped: boundary contamination, an invalid current
/// anchor, or a trajectory entering a masked/exterior region. Exit code 3.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kgbohm
