#include "kron/sweep.hpp"

#include <sstream>

namespace kron {

std::size_t depth_for_floor(const CoefficientStream& s, const Int& floor_value,
                            std::size_t max_depth) {
    Int q_prev = 0, q = 1;  // q_{-1}, q_0
    std::size_t k = 0;
    std::size_t cap = s.max_depth(max_depth);
    while (q <= floor_value && k < cap) {
        ++k;
        Int next = s.at(k) * q + q_prev;
        q_prev = q;
        q = next;
    }
    if (q <= floor_value && !s.is_terminating())
        throw DomainError("depth_for_floor: exceeded max depth " + std::to_string(max_depth));
    return k;
}

Realized realize_streams(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                         const DepthPolicy& policy) {
    if (streams.empty()) throw DomainError("no streams to realize");
    Int floor_value = Int(n_max) * Int(n_max);
    Realized r;
    for (const auto& s : streams) {
        std::size_t needed = depth_for_floor(s, floor_value, policy.max_auto_depth);
        std::size_t k = policy.fixed ? s.max_depth(*policy.fixed) : needed;
        if (policy.fixed) {
            // the guard: a fixed truncation must still clear the floor,
            // unless the stream terminates there (exact value)
            bool exact = s.is_terminating() && k == *s.length();
            auto conv = convergents(s, k);
            if (!exact && conv.back().q <= floor_value)
                throw StabilityError(needed, "truncation depth " + std::to_string(k) +
                                                 " gives q_K = " + conv.back().q.str() +
                                                 " <= N_max^2 = " + floor_value.str() +
                                                 "; use depth >= " + std::to_string(needed));
            r.alpha.push_back(Rat(conv.back().p, conv.back().q));
            r.depth.push_back(k);
        } else {
            r.alpha.push_back(value_of(s, k));
            r.depth.push_back(k);
        }
    }
    return r;
}

NNSweep::NNSweep(const PointSet& ps, std::vector<MetricSpec> metrics)
    : ps_(&ps), metrics_(std::move(metrics)) {
    if (metrics_.empty()) throw DomainError("sweep needs at least one metric");
    best_key_.resize(metrics_.size());
    best_j_.resize(metrics_.size());
    spectra_.resize(metrics_.size());
    for (std::size_t mi = 0; mi < metrics_.size(); ++mi) {
        best_key_[mi].reserve(ps.size());
        best_j_[mi].reserve(ps.size());
    }
}

std::size_t NNSweep::h_of_slot(std::size_t mi, std::size_t t) const {
    std::size_t i = ps_->index_of_slot(t);
    std::size_t j = best_j_[mi][t];
    return j > i ? j - i : i - j;
}

void NNSweep::step() {
    if (done()) throw DomainError("sweep already consumed all points");
    const std::size_t t_new = added_;
    const std::size_t idx_new = ps_->index_of_slot(t_new);
    const auto& zn = ps_->scaled_slot(t_new);
    const Int& L = ps_->scale();
    const std::size_t d = zn.size();
    norms_.resize(d);

    // key < 0 marks "no record yet" (only the very first point, briefly)
    std::vector<Int> my_best(metrics_.size(), Int(-1));
    std::vector<std::size_t> my_best_j(metrics_.size(), 0);

    for (std::size_t t = 0; t < t_new; ++t) {
        const auto& zt = ps_->scaled_slot(t);
        for (std::size_t c = 0; c < d; ++c) {
            Int diff = zt[c] - zn[c];
            if (diff < 0) diff = -diff;
            Int wrapped = L - diff;
            norms_[c] = diff < wrapped ? diff : wrapped;
        }
        for (std::size_t mi = 0; mi < metrics_.size(); ++mi) {
            const MetricSpec& m = metrics_[mi];
            Int key;
            if (m.infinite) {
                key = norms_[0];
                for (std::size_t c = 1; c < d; ++c)
                    if (norms_[c] > key) key = norms_[c];
            } else {
                key = 0;
                for (std::size_t c = 0; c < d; ++c) {
                    Int pw = norms_[c];
                    for (unsigned e = 1; e < m.p; ++e) pw *= norms_[c];
                    key += pw;
                }
            }
            // the resident point's record
            Int& cur = best_key_[mi][t];
            if (cur < 0) {
                ++spectra_[mi][key];
                cur = key;
                best_j_[mi][t] = idx_new;
            } else if (key < cur) {
                auto it = spectra_[mi].find(cur);
                if (--it->second == 0) spectra_[mi].erase(it);
                ++spectra_[mi][key];
                cur = key;
                best_j_[mi][t] = idx_new;
            } else if (key == cur) {
                best_j_[mi][t] = idx_new;  // maximum-index tie-break
            }
            // the newcomer's candidate; ascending scan + "<=" keeps the
            // maximum index among minimizers
            if (my_best[mi] < 0 || key <= my_best[mi]) {
                my_best[mi] = std::move(key);
                my_best_j[mi] = ps_->index_of_slot(t);
            }
        }
    }

    for (std::size_t mi = 0; mi < metrics_.size(); ++mi) {
        best_key_[mi].push_back(my_best[mi]);
        best_j_[mi].push_back(my_best_j[mi]);
        if (t_new > 0) ++spectra_[mi][my_best[mi]];
    }
    ++added_;
}

std::vector<NNRecord> nn_records(const NNSweep& engine, std::size_t mi) {
    std::vector<NNRecord> out;
    out.reserve(engine.points_added());
    const PointSet& ps = engine.points();
    for (std::size_t t = 0; t < engine.points_added(); ++t) {
        NNRecord r;
        r.i = ps.index_of_slot(t);
        r.j = engine.nn_of_slot(mi, t);
        r.h = engine.h_of_slot(mi, t);
        r.key = key_from_scaled(ps, engine.key_of_slot(mi, t), engine.metrics()[mi]);
        out.push_back(std::move(r));
    }
    return out;
}

std::size_t SweepTable::max_g(std::size_t mi) const {
    std::size_t m = 0;
    for (const auto& r : rows)
        if (r.g[mi] > m) m = r.g[mi];
    return m;
}

std::string window_label(const std::vector<Int>& ledger_qs, std::size_t n) {
    Int nn(static_cast<unsigned long long>(n));
    for (std::size_t i = 0; i < ledger_qs.size(); ++i) {
        const Int& q = ledger_qs[i];
        if (nn > q && nn <= 2 * q) return "W2";
        if (i + 1 < ledger_qs.size() && nn > 2 * q && nn <= ledger_qs[i + 1]) return "W1";
    }
    return "";
}

nlohmann::json SweepTable::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension;
    j["index_base"] = index_base;
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : metrics) ms.push_back(m.str());
    j["metrics"] = ms;
    j["depths"] = depths;
    nlohmann::json lq = nlohmann::json::array();
    for (const auto& q : ledger_qs) lq.push_back(q.str());
    j["ledger"] = lq;
    j["stability_checked"] = stability_checked;
    nlohmann::json rows_j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json rj;
        rj["n"] = r.n;
        rj["g"] = r.g;
        rj["h1"] = r.h1;
        rj["window"] = r.window;
        rows_j.push_back(rj);
    }
    j["rows"] = rows_j;
    return j;
}

SweepTable SweepTable::from_json(const nlohmann::json& j) {
    SweepTable t;
    t.dimension = j.at("dimension").get<int>();
    t.index_base = j.value("index_base", 1);
    for (const auto& m : j.at("metrics")) t.metrics.push_back(MetricSpec::parse(m.get<std::string>()));
    if (j.contains("depths")) t.depths = j.at("depths").get<std::vector<std::size_t>>();
    if (j.contains("ledger"))
        for (const auto& q : j.at("ledger")) t.ledger_qs.push_back(parse_int(q.get<std::string>()));
    t.stability_checked = j.value("stability_checked", false);
    for (const auto& rj : j.at("rows")) {
        SweepRow r;
        r.n = rj.at("n").get<std::size_t>();
        r.g = rj.at("g").get<std::vector<std::size_t>>();
        r.h1 = rj.at("h1").get<std::size_t>();
        r.window = rj.value("window", "");
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::string SweepTable::csv() const {
    std::ostringstream out;
    out << "N";
    for (const auto& m : metrics) out << ",g_L" << m.str();
    out << ",h1,window\n";
    for (const auto& r : rows) {
        out << r.n;
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) out << ',' << r.g[mi];
        out << ',' << r.h1 << ',' << r.window << '\n';
    }
    return out.str();
}

SweepTable sweep(const std::vector<CoefficientStream>& streams, const std::vector<Int>& ledger_qs,
                 std::size_t n_max, std::vector<MetricSpec> metrics, int index_base,
                 const DepthPolicy& policy, bool check_stability) {
    if (n_max < 2) throw DomainError("sweep needs N_max >= 2");
    Realized real = realize_streams(streams, n_max, policy);
    if (check_stability) {
        StabilityReport rep = stability_check_detail(streams, n_max, metrics, real.depth);
        if (!rep.ok) {
            std::size_t suggested = 0;
            for (std::size_t i = 0; i < streams.size(); ++i)
                suggested = std::max(suggested, real.depth[i] + 2);
            throw StabilityError(suggested, "sweep unstable under truncation deepening: " +
                                                rep.detail + "; retry with depth >= " +
                                                std::to_string(suggested));
        }
    }

    PointSet ps(real.alpha, n_max, index_base);
    NNSweep engine(ps, metrics);
    SweepTable table;
    table.dimension = static_cast<int>(real.alpha.size());
    table.index_base = index_base;
    table.metrics = engine.metrics();
    table.depths = real.depth;
    table.ledger_qs = ledger_qs;
    table.stability_checked = check_stability;

    while (!engine.done()) {
        engine.step();
        std::size_t count = engine.points_added();
        if (count < 2) continue;
        SweepRow row;
        row.n = count;
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) row.g.push_back(engine.g(mi));
        row.h1 = engine.h_of_slot(0, 0);
        row.window = window_label(ledger_qs, count);
        table.rows.push_back(std::move(row));
    }
    return table;
}

StabilityReport stability_check_detail(const std::vector<CoefficientStream>& streams,
                                       std::size_t n_max, const std::vector<MetricSpec>& metrics,
                                       const std::vector<std::size_t>& depths) {
    if (depths.size() != streams.size())
        throw DomainError("stability check: one depth per stream required");
    std::vector<Rat> alpha_a, alpha_b;
    for (std::size_t i = 0; i < streams.size(); ++i) {
        std::size_t ka = streams[i].max_depth(depths[i]);
        std::size_t kb = streams[i].max_depth(depths[i] + 2);
        alpha_a.push_back(value_of(streams[i], ka));
        alpha_b.push_back(value_of(streams[i], kb));
    }
    PointSet ps_a(alpha_a, n_max, 1);
    PointSet ps_b(alpha_b, n_max, 1);
    NNSweep ea(ps_a, metrics), eb(ps_b, metrics);
    while (!ea.done()) {
        ea.step();
        eb.step();
        std::size_t count = ea.points_added();
        if (count < 2) continue;
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
            if (ea.g(mi) != eb.g(mi))
                return {false, count,
                        "g_N differs at N = " + std::to_string(count) + " under metric L" +
                            metrics[mi].str() + " (" + std::to_string(ea.g(mi)) + " vs " +
                            std::to_string(eb.g(mi)) + ")"};
            for (std::size_t t = 0; t < count; ++t) {
                if (ea.nn_of_slot(mi, t) != eb.nn_of_slot(mi, t))
                    return {false, count,
                            "nn index of point " + std::to_string(ps_a.index_of_slot(t)) +
                                " differs at N = " + std::to_string(count)};
            }
        }
    }
    return {true, 0, ""};
}

bool stability_check(const std::vector<CoefficientStream>& streams, std::size_t n_max,
                     const std::vector<MetricSpec>& metrics, std::size_t depth) {
    std::vector<std::size_t> depths(streams.size(), depth);
    return stability_check_detail(streams, n_max, metrics, depths).ok;
}

}  // namespace kron
