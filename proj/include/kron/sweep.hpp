#pragma once

// Sweeps over N: incrementally maintained nearest-neighbor records for
// S_2, S_3, ..., S_{N_max}. Adding one point touches each existing record
// once, so a whole sweep costs one exact key evaluation per unordered
// pair, and the per-N results coincide with the brute-force scan of each
// prefix (the unit tests pin this against the O(N^2) oracle).
//
// Truncation policy: realized depths satisfy q_K > N_max^2 (terminating
// streams are exact and exempt), and a sweep is only reported after the
// K vs K+2 stability comparison passes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kron/cf.hpp"
#include "kron/nn.hpp"

#include "json.hpp"

namespace kron {

struct DepthPolicy {
    std::optional<std::size_t> fixed;  // auto when absent
    std::size_t max_auto_depth = 512;
};

struct Realized {
    std::vector<Rat> alpha;
    std::vector<std::size_t> depth;
};

// Smallest depth K with q_K > floor_value (capped at the stream length).
std::size_t depth_for_floor(const CoefficientStream& s, const Int& floor_value,
                            std::size_t max_depth = 512);

// Realize streams for a sweep up to n_max. Enforces the q_K > n_max^2
// floor; a fixed depth that falls short raises StabilityError with the
// suggested depth.
Realized realize_streams(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                         const DepthPolicy& policy = {});

class NNSweep {
public:
    NNSweep(const PointSet& ps, std::vector<MetricSpec> metrics);

    std::size_t points_added() const { return added_; }
    bool done() const { return added_ == ps_->size(); }
    void step();

    std::size_t metric_count() const { return metrics_.size(); }
    const std::vector<MetricSpec>& metrics() const { return metrics_; }
    std::size_t g(std::size_t mi) const { return spectra_[mi].size(); }
    // slot t = index first_index()+t; valid for t < points_added()
    std::size_t nn_of_slot(std::size_t mi, std::size_t t) const { return best_j_[mi][t]; }
    std::size_t h_of_slot(std::size_t mi, std::size_t t) const;
    const Int& key_of_slot(std::size_t mi, std::size_t t) const { return best_key_[mi][t]; }
    const std::map<Int, std::size_t>& spectrum(std::size_t mi) const { return spectra_[mi]; }
    const PointSet& points() const { return *ps_; }

private:
    const PointSet* ps_;
    std::vector<MetricSpec> metrics_;
    std::size_t added_ = 0;
    std::vector<std::vector<Int>> best_key_;        // [metric][slot]
    std::vector<std::vector<std::size_t>> best_j_;  // [metric][slot]
    std::vector<std::map<Int, std::size_t>> spectra_;
    std::vector<Int> norms_;  // scratch
};

struct SweepRow {
    std::size_t n = 0;               // number of points in the prefix
    std::vector<std::size_t> g;      // per metric
    std::size_t h1 = 0;              // h of the first point (first metric)
    std::string window;              // "W1", "W2" or ""
};

struct SweepTable {
    int dimension = 0;
    int index_base = 1;
    std::vector<MetricSpec> metrics;
    std::vector<std::size_t> depths;
    std::vector<Int> ledger_qs;
    std::vector<SweepRow> rows;  // n = 2 .. n_max
    bool stability_checked = false;

    std::size_t max_g(std::size_t mi) const;
    nlohmann::json to_json() const;
    static SweepTable from_json(const nlohmann::json& j);
    std::string csv() const;
};

// Predicted-window label for N given the coincidence ledger: "W2" on
// {q+1..2q}, "W1" on {2q+1..q'}, "" elsewhere.
std::string window_label(const std::vector<Int>& ledger_qs, std::size_t n);

SweepTable sweep(const std::vector<CoefficientStream>& streams, const std::vector<Int>& ledger_qs,
                 std::size_t n_max, std::vector<MetricSpec> metrics, int index_base = 1,
                 const DepthPolicy& policy = {}, bool check_stability = true);

// NN records of the engine's current prefix under metric mi.
std::vector<NNRecord> nn_records(const NNSweep& engine, std::size_t mi);

struct StabilityReport {
    bool ok = true;
    std::size_t first_divergence_n = 0;
    std::string detail;
};

// Lockstep comparison of two truncation levels (depths[] vs depths[]+2):
// every nn index and every g_N for N <= n_max must agree.
StabilityReport stability_check_detail(const std::vector<CoefficientStream>& streams,
                                       std::size_t n_max, const std::vector<MetricSpec>& metrics,
                                       const std::vector<std::size_t>& depths);

bool stability_check(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                     const std::vector<MetricSpec>& metrics, std::size_t depth);

}  // namespace kron
