#pragma once

#include <stdexcept>
#include <string>

namespace speechcmd {

// Bad configuration values or malformed config files. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (audio, manifests, caches, models).
// CLI exit code 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace speechcmd
