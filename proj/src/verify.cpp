#include "kron/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace kron {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

std::string CheckReport::verdict_str() const {
    switch (verdict) {
        case Verdict::pass: return "pass";
        case Verdict::vacuous: return "pass (vacuous)";
        case Verdict::fail: return "fail";
    }
    return "?";
}

nlohmann::json CheckReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["check"] = name;
    j["params"] = params;
    j["verdict"] = verdict == Verdict::fail ? "fail" : "pass";
    j["vacuous"] = verdict == Verdict::vacuous;
    j["instances"] = instances;
    j["counterexample"] = counterexample;
    if (include_timing) j["runtime_ms"] = runtime_ms;
    return j;
}

nlohmann::json WindowReport::to_json(bool include_timing) const {
    nlohmann::json j = summary.to_json(include_timing);
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : metrics) ms.push_back(m.str());
    j["metrics"] = ms;
    j["coefficient_condition"] = coefficient_condition;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : windows) {
        nlohmann::json wj;
        wj["l"] = w.l;
        wj["q"] = w.q.str();
        wj["two_distance_window"] = {w.w2_lo, w.w2_hi};
        wj["one_distance_window"] = {w.w1_lo, w.w1_hi};
        nlohmann::json per = nlohmann::json::array();
        for (std::size_t mi = 0; mi < w.per_metric.size(); ++mi) {
            const auto& pm = w.per_metric[mi];
            nlohmann::json pj;
            pj["metric"] = metrics[mi].str();
            pj["w2_first_bad_n"] = pm.w2_bad_n;
            pj["w2_observed_g"] = pm.w2_bad_g;
            pj["w1_first_bad_n"] = pm.w1_bad_n;
            pj["w1_observed_g"] = pm.w1_bad_g;
            per.push_back(pj);
        }
        wj["per_metric"] = per;
        ws.push_back(wj);
    }
    j["windows"] = ws;
    return j;
}

CheckReport check_three_gap(const CoefficientStream& s, std::size_t n_max,
                            const DepthPolicy& policy) {
    auto t0 = Clock::now();
    CheckReport rep;
    rep.name = "three-gap";
    rep.params = {{"stream", s.str()}, {"n_max", n_max}};
    if (n_max < 1) {
        rep.verdict = CheckReport::Verdict::vacuous;
        return rep;
    }

    Realized real = realize_streams({s}, n_max, policy);
    const Rat alpha = frac(real.alpha[0]);
    const Int den = denominator(alpha);
    const Int num = numerator(alpha);

    // incremental insertion into the circle: each new point splits one arc
    std::map<Int, std::size_t> occupied;   // position -> multiplicity
    std::map<Int, std::size_t> gaps;       // arc length -> multiplicity (0 allowed)
    Int pos = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        pos += num;
        if (pos >= den) pos -= den;
        if (occupied.empty()) {
            occupied[pos] = 1;
            gaps[den] = 1;
        } else if (auto it = occupied.find(pos); it != occupied.end()) {
            ++it->second;
            ++gaps[Int(0)];
        } else {
            auto next = occupied.upper_bound(pos);
            Int next_pos = next == occupied.end() ? occupied.begin()->first + den : next->first;
            auto prev = next == occupied.begin() ? std::prev(occupied.end()) : std::prev(next);
            Int prev_pos = next == occupied.begin() ? prev->first - den : prev->first;
            Int old_gap = next_pos - prev_pos;
            auto og = gaps.find(old_gap);
            if (--og->second == 0) gaps.erase(og);
            ++gaps[pos - prev_pos];
            ++gaps[next_pos - pos];
            occupied[pos] = 1;
        }
        ++rep.instances;
        if (gaps.size() > 3) {
            rep.verdict = CheckReport::Verdict::fail;
            nlohmann::json gl = nlohmann::json::array();
            for (const auto& [g, c] : gaps)
                gl.push_back({{"gap", to_string(Rat(g, den))}, {"count", c}});
            rep.counterexample = {{"n", n}, {"distinct_gaps", gaps.size()}, {"gaps", gl}};
            break;
        }
        Int total = 0;
        for (const auto& [g, c] : gaps) total += g * Int(static_cast<unsigned long long>(c));
        if (total != den) {
            rep.verdict = CheckReport::Verdict::fail;
            rep.counterexample = {{"n", n}, {"reason", "gaps do not sum to 1"}};
            break;
        }
    }
    rep.runtime_ms = ms_since(t0);
    return rep;
}

CheckReport check_lemma_part1(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                              const MetricSpec& metric, const DepthPolicy& policy) {
    auto t0 = Clock::now();
    CheckReport rep;
    rep.name = "counting-metric shift covariance";
    nlohmann::json sj = nlohmann::json::array();
    for (const auto& s : streams) sj.push_back(s.str());
    rep.params = {{"streams", sj}, {"n_max", n_max}, {"metric", metric.str()}};
    if (n_max < 3) {
        rep.verdict = CheckReport::Verdict::vacuous;
        return rep;
    }

    Realized real = realize_streams(streams, n_max, policy);
    PointSet ps(real.alpha, n_max, 1);
    NNSweep engine(ps, {metric});
    // h_by_n[n] = h-profile of S_n (index 1..n), for n = 2..n_max
    std::vector<std::vector<std::size_t>> h_by_n(n_max + 1);
    while (!engine.done()) {
        engine.step();
        std::size_t n = engine.points_added();
        if (n < 2) continue;
        auto& h = h_by_n[n];
        h.resize(n);
        for (std::size_t t = 0; t < n; ++t) h[t] = engine.h_of_slot(0, t);
    }

    for (std::size_t n = 2; n + 1 <= n_max; ++n) {
        for (std::size_t k = 1; n + k <= n_max; ++k) {
            if (h_by_n[n + k][0] != h_by_n[n][0]) continue;  // premise h_1(n+k) = h_1(n)
            ++rep.instances;
            if (h_by_n[n + k][k] != h_by_n[n][0]) {
                rep.verdict = CheckReport::Verdict::fail;
                rep.counterexample = {{"n", n},
                                      {"k", k},
                                      {"h_1(n)", h_by_n[n][0]},
                                      {"h_1(n+k)", h_by_n[n + k][0]},
                                      {"h_{1+k}(n+k)", h_by_n[n + k][k]}};
                rep.runtime_ms = ms_since(t0);
                return rep;
            }
        }
    }
    if (rep.instances == 0) rep.verdict = CheckReport::Verdict::vacuous;
    rep.runtime_ms = ms_since(t0);
    return rep;
}

CheckReport check_lemma_part2(const ConstructedTuple& tuple,
                              const std::vector<MetricSpec>& metrics, const Int& q_cap) {
    auto t0 = Clock::now();
    CheckReport rep;
    rep.name = "common-denominator jump h_1(q+1) = q";
    rep.params = {{"kind", tuple.kind}, {"dimension", tuple.dimension}, {"q_cap", q_cap.str()}};

    for (const auto& entry : tuple.ledger) {
        if (entry.q > q_cap) continue;
        if (entry.q < 2) continue;  // q = 1 gives the trivial two-point set
        std::size_t q_sz = entry.q.convert_to<std::size_t>();
        std::size_t n = q_sz + 1;
        Realized real = realize_streams(tuple.streams, n, {});
        PointSet ps(real.alpha, n, 1);
        for (const auto& m : metrics) {
            ++rep.instances;
            NNRecord r = nearest_neighbor(ps, 1, m);
            if (r.h != q_sz) {
                rep.verdict = CheckReport::Verdict::fail;
                rep.counterexample = {{"l", entry.l},       {"q", entry.q.str()},
                                      {"metric", m.str()},  {"observed_j", r.j},
                                      {"observed_h", r.h}};
                rep.runtime_ms = ms_since(t0);
                return rep;
            }
        }
    }
    if (rep.instances == 0) rep.verdict = CheckReport::Verdict::vacuous;
    rep.runtime_ms = ms_since(t0);
    return rep;
}

WindowReport check_theorem1(const CoefficientStream& alpha1, std::size_t n_max,
                            const std::vector<MetricSpec>& metrics) {
    auto t0 = Clock::now();
    if (alpha1.at(1) != 1)
        throw DomainError("pair-window check requires a_1 = 1 (alpha_1 in (1/2,1))");

    WindowReport wr;
    wr.metrics = metrics;
    wr.summary.name = "pair window structure";
    wr.summary.params = {{"alpha1", alpha1.str()}, {"n_max", n_max}};

    // ledger of the pair: q_i^2 = q_{i+1}^1; keep entries up to the first
    // one beyond n_max (it right-bounds the last one-distance window)
    ConstructedTuple pair = simple_pair(alpha1, 64);
    std::vector<Int> qs;
    for (const auto& e : pair.ledger) {
        qs.push_back(e.q);
        if (e.q > Int(static_cast<unsigned long long>(n_max))) break;
    }

    wr.table = sweep(pair.streams, qs, n_max, metrics, 1, {}, true);

    // coefficient condition: every coefficient of alpha_2 at least 2,
    // inspected across the realized depth
    std::size_t depth2 = wr.table.depths.at(1);
    wr.coefficient_condition = true;
    for (std::size_t i = 1; i <= depth2; ++i)
        if (pair.streams[1].at(i) < 2) wr.coefficient_condition = false;

    auto g_at = [&](std::size_t n, std::size_t mi) { return wr.table.rows[n - 2].g[mi]; };

    // global bounds
    for (std::size_t n = 2; n <= n_max; ++n) {
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
            std::size_t g = g_at(n, mi);
            std::size_t cap = wr.coefficient_condition ? 2 : 3;
            if (g < 1 || g > cap) {
                wr.summary.verdict = CheckReport::Verdict::fail;
                wr.summary.counterexample = {{"n", n},
                                             {"metric", metrics[mi].str()},
                                             {"observed_g", g},
                                             {"bound", cap}};
                wr.summary.runtime_ms = ms_since(t0);
                return wr;
            }
        }
        wr.summary.instances += metrics.size();
    }

    if (wr.coefficient_condition) {
        for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
            const Int& q = qs[i];
            const Int& q_next = qs[i + 1];
            if (2 * q >= q_next) continue;  // empty one-distance window: flagged, not tested
            if (q >= Int(static_cast<unsigned long long>(n_max))) break;
            WindowObservation w;
            w.l = i + 1;
            w.q = q;
            auto clamp = [&](const Int& v) {
                Int nm(static_cast<unsigned long long>(n_max));
                Int c = v > nm ? nm : v;
                return c.convert_to<std::size_t>();
            };
            w.w2_lo = q.convert_to<std::size_t>() + 1;
            w.w2_hi = clamp(2 * q);
            w.w1_lo = (2 * q).convert_to<std::size_t>() + 1;
            w.w1_hi = clamp(q_next);
            w.per_metric.resize(metrics.size());
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                auto& pm = w.per_metric[mi];
                for (std::size_t n = w.w2_lo; n <= w.w2_hi; ++n) {
                    ++wr.summary.instances;
                    if (g_at(n, mi) != 2) {
                        pm.w2_bad_n = n;
                        pm.w2_bad_g = g_at(n, mi);
                        break;
                    }
                }
                if (w.w1_lo <= w.w1_hi) {
                    for (std::size_t n = w.w1_lo; n <= w.w1_hi; ++n) {
                        ++wr.summary.instances;
                        if (g_at(n, mi) != 1) {
                            pm.w1_bad_n = n;
                            pm.w1_bad_g = g_at(n, mi);
                            break;
                        }
                    }
                }
                if (pm.w2_bad_n || pm.w1_bad_n) {
                    wr.summary.verdict = CheckReport::Verdict::fail;
                    if (wr.summary.counterexample.is_null()) {
                        std::size_t bad_n = pm.w2_bad_n ? pm.w2_bad_n : pm.w1_bad_n;
                        wr.summary.counterexample = {
                            {"l", w.l},
                            {"q", q.str()},
                            {"metric", metrics[mi].str()},
                            {"window", pm.w2_bad_n ? "two-distance" : "one-distance"},
                            {"n", bad_n},
                            {"predicted_g", pm.w2_bad_n ? 2 : 1},
                            {"observed_g", g_at(bad_n, mi)}};
                    }
                }
            }
            wr.windows.push_back(std::move(w));
        }
    }
    wr.summary.runtime_ms = ms_since(t0);
    return wr;
}

CheckReport check_asmallest(const CoefficientStream& s, std::size_t i_max, std::size_t n_cap) {
    auto t0 = Clock::now();
    CheckReport rep;
    rep.name = "closest-points chain";
    rep.params = {{"stream", s.str()}, {"i_max", i_max}, {"n_cap", n_cap}};

    Int cap(static_cast<unsigned long long>(n_cap));
    std::size_t depth = depth_for_floor(s, cap * cap);
    depth = std::max(depth, s.max_depth(i_max + 4));
    auto conv = convergents(s, depth);
    const Rat alpha = Rat(conv.back().p, conv.back().q);
    const Int& A = numerator(alpha);
    const Int& Q = denominator(alpha);
    auto norm_of = [&](const Int& n) {
        Int t = mod_floor(n * A, Q);
        Int other = Q - t;
        return t < other ? t : other;  // numerator of ||n*alpha|| over Q
    };

    for (std::size_t i = 1; i <= i_max && i + 1 <= depth; ++i) {
        const Int& qi = conv[i].q;
        const Int& qn = conv[i + 1].q;
        Int a_next = s.at(i + 1);
        if (norm_of(qn) == 0) continue;  // exact truncation level: nothing to rank
        // chain indices in ascending norm order: q', q, q'-q, 2q, q'-2q, ..., aq
        std::vector<Int> ordered{qn};
        for (Int m = 1; m <= a_next; ++m) {
            ordered.push_back(m * qi);
            if (m < a_next) ordered.push_back(qn - m * qi);
        }
        std::set<Int> distinct(ordered.begin(), ordered.end());
        if (distinct.size() != ordered.size()) continue;  // degenerate level (q_i = 1)

        ++rep.instances;
        Int prev_norm(-1);
        for (const Int& idx : ordered) {
            Int nv = norm_of(idx);
            if (prev_norm >= 0 && !(prev_norm < nv)) {
                rep.verdict = CheckReport::Verdict::fail;
                rep.counterexample = {{"level", i},
                                      {"index", idx.str()},
                                      {"norm", to_string(Rat(nv, Q))},
                                      {"previous_norm", to_string(Rat(prev_norm, Q))}};
                rep.runtime_ms = ms_since(t0);
                return rep;
            }
            prev_norm = nv;
        }
        if (qn <= cap) {
            // brute force: the chain must be exactly the 2a smallest norms
            // over n in [q_i, q_{i+1}]
            Int chain_max = norm_of(ordered.back());
            for (Int n = qi; n <= qn; ++n) {
                if (distinct.count(n)) continue;
                Int nv = norm_of(n);
                if (nv <= chain_max) {
                    rep.verdict = CheckReport::Verdict::fail;
                    rep.counterexample = {{"level", i},
                                          {"interloper_index", n.str()},
                                          {"norm", to_string(Rat(nv, Q))},
                                          {"chain_max", to_string(Rat(chain_max, Q))}};
                    rep.runtime_ms = ms_since(t0);
                    return rep;
                }
            }
        }
    }
    if (rep.instances == 0) rep.verdict = CheckReport::Verdict::vacuous;
    rep.runtime_ms = ms_since(t0);
    return rep;
}

CheckReport check_upper_bounds(const std::vector<SweepTable>& logs) {
    auto t0 = Clock::now();
    CheckReport rep;
    rep.name = "kissing-number bound on Euclidean g_N";
    rep.params = {{"tables", logs.size()}};
    for (const auto& table : logs) {
        std::size_t bound;
        switch (table.dimension) {
            case 1: bound = 3; break;
            case 2: bound = 5; break;
            case 3: bound = 13; break;  // sigma_3 + 1
            default: continue;
        }
        for (std::size_t mi = 0; mi < table.metrics.size(); ++mi) {
            if (table.metrics[mi].infinite || table.metrics[mi].p != 2) continue;
            for (const auto& row : table.rows) {
                ++rep.instances;
                if (row.g[mi] > bound) {
                    rep.verdict = CheckReport::Verdict::fail;
                    rep.counterexample = {{"dimension", table.dimension},
                                          {"n", row.n},
                                          {"observed_g", row.g[mi]},
                                          {"bound", bound}};
                    rep.runtime_ms = ms_since(t0);
                    return rep;
                }
            }
        }
    }
    if (rep.instances == 0) rep.verdict = CheckReport::Verdict::vacuous;
    rep.runtime_ms = ms_since(t0);
    return rep;
}

}  // namespace kron
