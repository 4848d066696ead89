#ifndef AGGTS_ERRORS_HPP
#define AGGTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aggts {

/// Invalid configuration or argument combination (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or insufficient input data (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: rank deficiency, no admissible model, ... (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace aggts

#endif
