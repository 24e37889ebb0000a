#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace keller {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands belong to different rings or variable sets.
struct ring_mismatch_error : error {
    using error::error;
};

/// Division by zero, inversion of zero, or a non-exact integer division.
struct division_error : error {
    using error::error;
};

/// Reduction mod p hit a rational whose denominator vanishes mod p.
struct denominator_vanishes_mod_p : error {
    using error::error;
};

struct parse_error : error {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

/// A bounded search ran out of budget (distinct from a definite "not found").
struct budget_exceeded : error {
    using error::error;
};

} // namespace keller
