#pragma once

#include <stdexcept>
#include <string>

namespace semikit {

/* Bad arguments or malformed input data. CLI exit code 2. */
struct invalid_input_error : std::runtime_error {
    explicit invalid_input_error(const std::string& what) : std::runtime_error(what) {}
};

/* A gamma form turned out to be rationally dependent: some nonzero
 * integer vector has dot product exactly zero. */
struct dependence_error : invalid_input_error {
    explicit dependence_error(const std::string& what) : invalid_input_error(what) {}
};

/* Configured budget (steps, carrier size, coordinate bound) exhausted.
 * CLI exit code 3. */
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/* An internal cross-check (oracle vs. implementation) disagreed.
 * Always a bug somewhere; CLI exit code 1. */
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace semikit
