#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

// Invalid combination of run parameters (mismatched cutoffs, bad ranges).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Work or memory bound exceeded (enumeration budgets, table sizes).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested accuracy cannot be certified in double precision.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace resonance
