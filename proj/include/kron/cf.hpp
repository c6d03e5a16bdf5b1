#pragma once

// Continued-fraction machinery: coefficient streams with finite, periodic
// or programmatic tails, the convergent recurrences
//
//   p_n = a_n p_{n-1} + p_{n-2},   q_n = a_n q_{n-1} + q_{n-2},
//   p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0,
//
// exact evaluation, the complement map alpha -> 1 - alpha, and the
// Euclidean decomposition of a rational into its canonical expansion.
// All values here are numbers in (0,1), so a_0 = 0 throughout.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kron/numeric.hpp"

namespace kron {

class CoefficientStream {
public:
    struct Terminating {};
    struct Periodic {
        std::vector<Int> period;
    };
    // Pure function of the 1-based coefficient index; must be deterministic.
    using Rule = std::function<Int(std::size_t)>;

    static CoefficientStream terminating(std::vector<Int> prefix);
    static CoefficientStream periodic(std::vector<Int> prefix, std::vector<Int> period);
    static CoefficientStream with_rule(std::vector<Int> prefix, Rule rule);

    // Coefficient a_i for i >= 1. Throws DomainError past the end of a
    // terminating stream.
    Int at(std::size_t i) const;

    // Number of coefficients of a terminating stream; nullopt otherwise.
    std::optional<std::size_t> length() const;

    bool is_terminating() const { return std::holds_alternative<Terminating>(tail_); }
    bool is_periodic() const { return std::holds_alternative<Periodic>(tail_); }

    const std::vector<Int>& prefix() const { return prefix_; }
    const std::vector<Int>& period() const { return std::get<Periodic>(tail_).period; }

    // Greatest depth usable with convergents(): length() if terminating,
    // otherwise `fallback`.
    std::size_t max_depth(std::size_t fallback) const;

    // Text form "0;a1,a2,..." with a parenthesized periodic tail, e.g.
    // "0;1,2,(3,4)". Rule tails cannot be serialized.
    std::string str() const;
    static CoefficientStream parse(std::string_view text);

private:
    CoefficientStream() = default;
    std::vector<Int> prefix_;
    std::variant<Terminating, Periodic, Rule> tail_;
};

struct Convergent {
    std::size_t n = 0;  // index, starting at 0 (p_0/q_0 = 0/1)
    Int p;
    Int q;
};

// Convergents n = 0..depth. Throws DomainError (naming the maximal depth)
// if depth exceeds a terminating stream.
std::vector<Convergent> convergents(const CoefficientStream& s, std::size_t depth);

// p_depth / q_depth in lowest terms.
Rat value_of(const CoefficientStream& s, std::size_t depth);

// Canonical terminating expansion of x in (0,1); never ends in a trailing 1.
CoefficientStream rational_to_cf(const Rat& x);

// For alpha = [0;1,a2,a3,...] in (1/2,1) returns [0;a2+1,a3,...] = 1 - alpha.
// Requires a_1 = 1.
CoefficientStream complement(const CoefficientStream& s);

}  // namespace kron
