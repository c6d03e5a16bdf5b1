#pragma once

// Nearest-neighbor analysis of a finite orbit: per-point NN records with
// the maximum-index tie-break, the spectrum of distinct NN distances
// (whose cardinality is g_N), the counting-metric profile h_i, the NN
// graph, and 1D adjacent circle gaps.

#include <cstddef>
#include <vector>

#include "kron/points.hpp"

namespace kron {

struct NNRecord {
    std::size_t i = 0;  // query index
    std::size_t j = 0;  // nn_1(z_i); maximum index among minimizers
    DistanceKey key;
    std::size_t h = 0;  // |j - i|
};

struct GapSpectrum {
    // distinct NN distance keys with multiplicities, ascending
    std::vector<std::pair<DistanceKey, std::size_t>> entries;

    std::size_t g() const { return entries.size(); }
    std::size_t total() const;
};

// Exact integer comparison key between two indices (numerator of the
// DistanceKey over scale()^p, or over scale() for L_inf).
Int scaled_key(const PointSet& ps, std::size_t i, std::size_t j, const MetricSpec& m);

DistanceKey key_from_scaled(const PointSet& ps, const Int& raw, const MetricSpec& m);

NNRecord nearest_neighbor(const PointSet& ps, std::size_t i, const MetricSpec& m);
GapSpectrum gap_spectrum(const PointSet& ps, const MetricSpec& m);
std::vector<std::size_t> h_profile(const PointSet& ps, const MetricSpec& m);
std::vector<NNRecord> nn_graph(const PointSet& ps, const MetricSpec& m);

// Sorted multiset of adjacent-arc lengths of the 1D orbit (wrap-around
// included; duplicate positions contribute zero-length gaps).
std::vector<Rat> circle_gaps(const Rat& alpha, std::size_t n, int index_base = 0);

std::size_t distinct_count(const std::vector<Rat>& sorted_gaps);

}  // namespace kron
