#pragma once

#include <stdexcept>
#include <string>

namespace isowitt {

// Input violated a documented precondition (CLI exit code 2).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& m) : std::invalid_argument(m) {}
};

// A configured search/enumeration cap was hit before a decision (exit code 2).
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& m) : std::runtime_error(m) {}
};

// A certification step (primality, squarefreeness, irreducibility) could not
// come to a provable conclusion within its bounds (exit code 2).
struct uncertified : std::runtime_error {
    explicit uncertified(const std::string& m) : std::runtime_error(m) {}
};

// The requested quantity has no implemented formula (documented gap, exit 2).
struct unsupported : std::runtime_error {
    explicit unsupported(const std::string& m) : std::runtime_error(m) {}
};

// S is not a power of a single irreducible polynomial.
struct not_a_power : std::runtime_error {
    explicit not_a_power(const std::string& m) : std::runtime_error(m) {}
};

// The isometry generates an unbounded module (non-integral char polynomial).
struct unbounded : std::runtime_error {
    explicit unbounded(const std::string& m) : std::runtime_error(m) {}
};

// Internal consistency failure that indicates a software defect, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

}  // namespace isowitt
