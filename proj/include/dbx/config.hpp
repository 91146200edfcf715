#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace dbx {

struct Config {
    unsigned precision_bits = 128;
    double root_tol = 1e-12;
    std::size_t depth_default = 64;
    std::uint64_t seed = 0;
    std::string output_format = "json";  // json | csv

    void validate() const;  // throws config_error on invariant violations
};

// key=value file, '#' comments. Later sources win: defaults < file < env
// (DBX_PRECISION_BITS, DBX_ROOT_TOL, DBX_SEED) < flags (applied by the CLI).
Config load_config(const std::optional<std::string>& path);

} // namespace dbx
