#pragma once

#include <stdexcept>
#include <string>

namespace dynsamp {

// Bad input: domain violations, dimension mismatches, malformed scenarios.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// The computation itself failed: eigen-solve breakdown, unbounded tails,
// systems that are not frames at the requested truncation.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant broken; indicates a bug, not a user error.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dynsamp
