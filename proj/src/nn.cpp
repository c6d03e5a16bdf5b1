#include "kron/nn.hpp"

#include <algorithm>
#include <map>

namespace kron {

std::size_t GapSpectrum::total() const {
    std::size_t t = 0;
    for (const auto& [k, c] : entries) t += c;
    return t;
}

namespace {

// min(|u-v|, L-|u-v|) per coordinate, written into `norms`.
void coord_norms(const PointSet& ps, std::size_t i, std::size_t j, std::vector<Int>& norms) {
    const auto& a = ps.scaled(i);
    const auto& b = ps.scaled(j);
    const Int& L = ps.scale();
    norms.resize(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
        Int d = a[c] - b[c];
        if (d < 0) d = -d;
        Int wrapped = L - d;
        norms[c] = d < wrapped ? d : wrapped;
    }
}

Int fold_key(const std::vector<Int>& norms, const MetricSpec& m) {
    if (m.infinite) {
        Int best = 0;
        for (const Int& n : norms)
            if (n > best) best = n;
        return best;
    }
    Int sum = 0;
    for (const Int& n : norms) {
        Int pw = n;
        for (unsigned k = 1; k < m.p; ++k) pw *= n;
        sum += pw;
    }
    return sum;
}

}  // namespace

Int scaled_key(const PointSet& ps, std::size_t i, std::size_t j, const MetricSpec& m) {
    std::vector<Int> norms;
    coord_norms(ps, i, j, norms);
    return fold_key(norms, m);
}

DistanceKey key_from_scaled(const PointSet& ps, const Int& raw, const MetricSpec& m) {
    if (m.infinite) return {Rat(raw, ps.scale())};
    Int den = 1;
    for (unsigned k = 0; k < m.p; ++k) den *= ps.scale();
    return {Rat(raw, den)};
}

NNRecord nearest_neighbor(const PointSet& ps, std::size_t i, const MetricSpec& m) {
    if (ps.size() < 2) throw DomainError("nearest neighbor needs at least two points");
    if (i < ps.first_index() || i > ps.last_index())
        throw DomainError("index " + std::to_string(i) + " out of range");
    Int best;
    std::size_t best_j = 0;
    bool have = false;
    std::vector<Int> norms;
    for (std::size_t j = ps.first_index(); j <= ps.last_index(); ++j) {
        if (j == i) continue;
        coord_norms(ps, i, j, norms);
        Int key = fold_key(norms, m);
        // ascending j, so "<=" realizes the maximum-index tie-break
        if (!have || key <= best) {
            best = std::move(key);
            best_j = j;
            have = true;
        }
    }
    std::size_t h = best_j > i ? best_j - i : i - best_j;
    return {i, best_j, key_from_scaled(ps, best, m), h};
}

std::vector<NNRecord> nn_graph(const PointSet& ps, const MetricSpec& m) {
    std::vector<NNRecord> out;
    out.reserve(ps.size());
    for (std::size_t i = ps.first_index(); i <= ps.last_index(); ++i)
        out.push_back(nearest_neighbor(ps, i, m));
    return out;
}

GapSpectrum gap_spectrum(const PointSet& ps, const MetricSpec& m) {
    std::map<Int, std::size_t> counts;
    for (std::size_t i = ps.first_index(); i <= ps.last_index(); ++i) {
        std::vector<Int> norms;
        Int best;
        bool have = false;
        for (std::size_t j = ps.first_index(); j <= ps.last_index(); ++j) {
            if (j == i) continue;
            coord_norms(ps, i, j, norms);
            Int key = fold_key(norms, m);
            if (!have || key < best) {
                best = std::move(key);
                have = true;
            }
        }
        ++counts[best];
    }
    GapSpectrum spec;
    spec.entries.reserve(counts.size());
    for (const auto& [raw, c] : counts)
        spec.entries.emplace_back(key_from_scaled(ps, raw, m), c);
    return spec;
}

std::vector<std::size_t> h_profile(const PointSet& ps, const MetricSpec& m) {
    std::vector<std::size_t> out;
    out.reserve(ps.size());
    for (std::size_t i = ps.first_index(); i <= ps.last_index(); ++i)
        out.push_back(nearest_neighbor(ps, i, m).h);
    return out;
}

std::vector<Rat> circle_gaps(const Rat& alpha, std::size_t n, int index_base) {
    PointSet ps({alpha}, n, index_base);
    std::vector<Int> pos;
    pos.reserve(ps.size());
    for (std::size_t i = ps.first_index(); i <= ps.last_index(); ++i)
        pos.push_back(ps.scaled(i)[0]);
    std::sort(pos.begin(), pos.end());
    const Int& L = ps.scale();
    std::vector<Rat> gaps;
    gaps.reserve(pos.size());
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        gaps.emplace_back(pos[i + 1] - pos[i], L);
    gaps.emplace_back(Rat(pos.front() + L - pos.back(), L));
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

std::size_t distinct_count(const std::vector<Rat>& sorted_gaps) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < sorted_gaps.size(); ++i)
        if (i == 0 || sorted_gaps[i] != sorted_gaps[i - 1]) ++d;
    return d;
}

}  // namespace kron
