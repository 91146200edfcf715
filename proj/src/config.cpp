#include "dbx/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dbx/errors.hpp"

namespace dbx {

void Config::validate() const {
    if (precision_bits < 53) {
        throw config_error("precision_bits must be >= 53, got " + std::to_string(precision_bits));
    }
    if (!(root_tol > 0)) {
        throw config_error("root_tol must be positive");
    }
    if (output_format != "json" && output_format != "csv") {
        throw config_error("output_format must be json or csv, got " + output_format);
    }
}

namespace {

void apply_key(Config& cfg, const std::string& key, const std::string& value, int line) {
    auto fail = [&](const std::string& why) -> config_error {
        return config_error("config line " + std::to_string(line) + ": " + why);
    };
    try {
        if (key == "precision_bits") {
            cfg.precision_bits = static_cast<unsigned>(std::stoul(value));
        } else if (key == "root_tol") {
            cfg.root_tol = std::stod(value);
        } else if (key == "depth_default") {
            cfg.depth_default = std::stoul(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "output_format") {
            cfg.output_format = value;
        } else {
            throw fail("unknown key \"" + key + "\"");
        }
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw fail("cannot parse value \"" + value + "\" for key \"" + key + "\"");
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

Config load_config(const std::optional<std::string>& path) {
    Config cfg;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw config_error("cannot open config file " + *path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string stripped = trim(line.substr(0, line.find('#')));
            if (stripped.empty()) continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw config_error("config line " + std::to_string(lineno) +
                                   ": expected key=value, got \"" + stripped + "\"");
            }
            apply_key(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)), lineno);
        }
    }
    if (const char* v = std::getenv("DBX_PRECISION_BITS")) apply_key(cfg, "precision_bits", v, 0);
    if (const char* v = std::getenv("DBX_ROOT_TOL")) apply_key(cfg, "root_tol", v, 0);
    if (const char* v = std::getenv("DBX_SEED")) apply_key(cfg, "seed", v, 0);
    cfg.validate();
    return cfg;
}

} // namespace dbx
