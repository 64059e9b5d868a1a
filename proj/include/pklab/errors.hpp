#pragma once
#include <stdexcept>
#include <string>

namespace pklab {

// Invalid grid/solver/CLI configuration (bad N, mismatched grids, bad keys).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A sampled function or intermediate produced a non-finite value.
class SamplingError : public std::runtime_error {
public:
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pklab
