#pragma once

// Executable checks for the gap-structure claims, with counterexample
// reporting. Failing checks always carry the first offending instance in
// a form that a brute-force re-run can confirm independently. Vacuous
// passes (nothing to check) are labeled as such, never silently skipped.

#include <string>
#include <vector>

#include "kron/construction.hpp"
#include "kron/sweep.hpp"

#include "json.hpp"

namespace kron {

struct CheckReport {
    std::string name;
    nlohmann::json params;
    enum class Verdict { pass, vacuous, fail } verdict = Verdict::pass;
    nlohmann::json counterexample;
    std::size_t instances = 0;
    double runtime_ms = 0;  // console-only; excluded from data files

    bool passed() const { return verdict != Verdict::fail; }
    std::string verdict_str() const;
    nlohmann::json to_json(bool include_timing = false) const;
};

// Per-window observation for the pair-window check: predicted two-distance
// range {q+1..2q} and one-distance range {2q+1..q'}, with the first
// violating N per metric (0 = clean).
struct WindowObservation {
    std::size_t l = 0;
    Int q;
    std::size_t w2_lo = 0, w2_hi = 0;  // clamped to [2, n_max]; lo > hi means empty
    std::size_t w1_lo = 0, w1_hi = 0;
    struct PerMetric {
        std::size_t w2_bad_n = 0, w2_bad_g = 0;
        std::size_t w1_bad_n = 0, w1_bad_g = 0;
    };
    std::vector<PerMetric> per_metric;
};

struct WindowReport {
    CheckReport summary;
    std::vector<MetricSpec> metrics;
    bool coefficient_condition = false;  // all a_i >= 2 beyond index 1
    std::vector<WindowObservation> windows;
    SweepTable table;

    nlohmann::json to_json(bool include_timing = false) const;
};

// At most three distinct adjacent gaps on the circle, for every N <= n_max;
// gaps sum to exactly 1.
CheckReport check_three_gap(const CoefficientStream& s, std::size_t n_max,
                            const DepthPolicy& policy = {});

// Shift covariance of the counting metric: h_1(n+k) = h_1(n) implies
// h_{1+k}(n+k) = h_1(n).
CheckReport check_lemma_part1(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                              const MetricSpec& metric, const DepthPolicy& policy = {});

// Common-denominator jump: h_1(q+1) = q for every ledger denominator
// q <= q_cap, under every given metric.
CheckReport check_lemma_part2(const ConstructedTuple& tuple,
                              const std::vector<MetricSpec>& metrics, const Int& q_cap);

// Window structure of the pair (alpha, 1-alpha): 1 <= g_N <= 3 always;
// with all coefficients >= 2 beyond index 1 additionally g_N <= 2 and the
// predicted windows g=2 on {q+1..2q}, g=1 on {2q+1..q'}.
WindowReport check_theorem1(const CoefficientStream& alpha1, std::size_t n_max,
                            const std::vector<MetricSpec>& metrics);

// Closest-points chain per convergent level i: the alternating chain of
// torus norms at indices q', q, q'-q, 2q, ..., a*q is strictly increasing
// and (for q' <= n_cap) identifies exactly the 2a smallest norms over
// n in [q_i, q_{i+1}].
CheckReport check_asmallest(const CoefficientStream& s, std::size_t i_max, std::size_t n_cap);

// Euclidean nearest-neighbor distance counts respect 3 / 5 / 13 in
// dimensions 1 / 2 / 3 across the recorded sweeps.
CheckReport check_upper_bounds(const std::vector<SweepTable>& logs);

}  // namespace kron
