#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kron {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input value (stream outside (0,1), nonpositive argument, ...).
struct DomainError : Error {
    using Error::Error;
};

// A construction step could not be completed; `level` is the schedule
// index l at which it failed.
struct ConstructionError : Error {
    std::size_t level;
    ConstructionError(std::size_t l, const std::string& what) : Error(what), level(l) {}
};

// Truncation too shallow for the requested sweep. `suggested_depth` is a
// depth that satisfies the q_K > N_max^2 floor.
struct StabilityError : Error {
    std::size_t suggested_depth;
    StabilityError(std::size_t depth, const std::string& what)
        : Error(what), suggested_depth(depth) {}
};

}  // namespace kron
