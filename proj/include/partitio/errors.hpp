#pragma once

#include <stdexcept>
#include <string>

namespace partitio {

// Root finder was handed a bracket whose endpoints do not straddle the target.
struct bracket_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct lookup_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct config_error : std::invalid_argument {
    config_error(const std::string& what, int line = 0)
        : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace partitio
