#pragma once

#include <stdexcept>
#include <string>

namespace dbx {

// Violated contract on user-supplied input (bad region, sequence not in B',
// x outside the expandable interval, ...). CLI maps this to exit code 1.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (no bracket found, sign anomaly, divergent series).
// CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration file or invalid configuration value.
// CLI maps this to exit code 78.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dbx
