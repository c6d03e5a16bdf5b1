#pragma once

// Finite Kronecker orbits S_N = { {n*alpha_1}, ..., {n*alpha_d} } as exact
// rational torus points. Internally every coordinate is an integer over a
// common denominator L, so all nearest-neighbor comparisons reduce to
// integer arithmetic.

#include <cstddef>
#include <vector>

#include "kron/torus.hpp"

namespace kron {

class PointSet {
public:
    // index_base 1: indices 1..n (n points).
    // index_base 0: indices 0..n (n+1 points, both endpoints; the
    // rotation-picture convention).
    PointSet(std::vector<Rat> alpha, std::size_t n, int index_base);

    int dimension() const { return static_cast<int>(alpha_.size()); }
    const std::vector<Rat>& alpha() const { return alpha_; }
    int index_base() const { return base_; }
    std::size_t n() const { return n_; }

    std::size_t size() const { return pts_.size(); }
    std::size_t first_index() const { return base_ == 0 ? 0 : 1; }
    std::size_t last_index() const { return n_; }
    std::size_t index_of_slot(std::size_t slot) const { return slot + first_index(); }
    std::size_t slot_of_index(std::size_t idx) const { return idx - first_index(); }

    TorusPoint point(std::size_t idx) const;

    // Scaled representation: coordinate j of index idx equals
    // scaled(idx)[j] / scale().
    const Int& scale() const { return scale_; }
    const std::vector<Int>& scaled_slot(std::size_t slot) const { return pts_[slot]; }
    const std::vector<Int>& scaled(std::size_t idx) const { return pts_[slot_of_index(idx)]; }

private:
    std::vector<Rat> alpha_;
    std::size_t n_;
    int base_;
    Int scale_;
    std::vector<std::vector<Int>> pts_;
};

PointSet generate(const std::vector<Rat>& alpha, std::size_t n, int index_base = 1);

}  // namespace kron
