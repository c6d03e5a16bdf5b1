#pragma once

// Exact L_q geometry on the d-torus. Distances are never materialized as
// roots; comparisons go through DistanceKey, the exact rational
// sum-of-q-th-powers (or max for q = infinity), which is strictly
// monotone in the distance.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "kron/numeric.hpp"

namespace kron {

struct MetricSpec {
    unsigned p = 2;        // exponent; meaningful when !infinite
    bool infinite = false;

    static MetricSpec l1() { return {1, false}; }
    static MetricSpec l2() { return {2, false}; }
    static MetricSpec linf() { return {0, true}; }
    static MetricSpec lp(unsigned p);

    static MetricSpec parse(std::string_view text);  // "1", "2", ..., "inf"
    std::string str() const;

    bool operator==(const MetricSpec&) const = default;
};

class TorusPoint {
public:
    explicit TorusPoint(std::vector<Rat> coords);  // reduces each into [0,1)

    int dimension() const { return static_cast<int>(coords_.size()); }
    const Rat& coord(std::size_t i) const { return coords_[i]; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool operator==(const TorusPoint&) const = default;

private:
    std::vector<Rat> coords_;
};

// Distance of x to the nearest integer: min({x}, 1-{x}), in [0, 1/2].
Rat coord_norm(const Rat& x);

struct DistanceKey {
    Rat value;
    bool operator==(const DistanceKey& o) const { return value == o.value; }
    bool operator!=(const DistanceKey& o) const { return value != o.value; }
    bool operator<(const DistanceKey& o) const { return value < o.value; }
    bool operator<=(const DistanceKey& o) const { return value <= o.value; }
    bool operator>(const DistanceKey& o) const { return value > o.value; }
    bool operator>=(const DistanceKey& o) const { return value >= o.value; }
};

DistanceKey distance_key(const TorusPoint& x, const TorusPoint& y, const MetricSpec& m);

}  // namespace kron
