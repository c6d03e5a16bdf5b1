#include "kron/construction.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace kron {

using boost::multiprecision::gcd;

void ConstructionSchedule::validate() const {
    if (k.empty()) throw DomainError("schedule needs at least one index k_1");
    if (k.front() < 2) throw DomainError("schedule requires k_1 >= 2");
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (k[i] < k[i - 1] + 2)
            throw DomainError("schedule indices must increase with gaps >= 2");
    }
    if (min_coefficient < 1) throw DomainError("min_coefficient must be >= 1");
    if (!extension_b.empty() && extension_b.size() != k.size() - 1)
        throw DomainError("extension needs exactly one b per inductive step");
    for (const Int& b : extension_b)
        if (b < 1) throw DomainError("extension multipliers must be >= 1");
    for (const auto& [pos, val] : free_coefficients) {
        if (val < 1) throw DomainError("free coefficients must be >= 1");
        bool in_range = false;
        for (std::size_t l = 0; l + 1 < k.size(); ++l)
            if (pos >= k[l] + 1 && pos <= k[l + 1] - 1) in_range = true;
        if (!in_range)
            throw DomainError("free coefficient position " + std::to_string(pos) +
                              " is not an unconstrained slot of this schedule");
    }
}

namespace {

Int json_to_int(const nlohmann::json& v) {
    if (v.is_string()) return parse_int(v.get<std::string>());
    if (v.is_number_integer()) return Int(v.get<long long>());
    throw DomainError("expected integer or integer string in JSON");
}

nlohmann::json int_to_json(const Int& v) {
    static const Int lo = -(Int(1) << 53), hi = Int(1) << 53;
    if (v > lo && v < hi) return nlohmann::json(v.convert_to<long long>());
    return nlohmann::json(v.str());
}

}  // namespace

ConstructionSchedule ConstructionSchedule::from_json(const nlohmann::json& j) {
    ConstructionSchedule s;
    if (!j.contains("k")) throw DomainError("schedule JSON needs a \"k\" array");
    for (const auto& v : j.at("k")) s.k.push_back(v.get<std::size_t>());
    if (j.contains("free"))
        for (const auto& [key, val] : j.at("free").items())
            s.free_coefficients[std::stoull(key)] = json_to_int(val);
    if (j.contains("min_coefficient")) s.min_coefficient = json_to_int(j.at("min_coefficient"));
    if (j.contains("b"))
        for (const auto& v : j.at("b")) s.extension_b.push_back(json_to_int(v));
    s.validate();
    return s;
}

nlohmann::json ConstructionSchedule::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    nlohmann::json free = nlohmann::json::object();
    for (const auto& [pos, val] : free_coefficients) free[std::to_string(pos)] = int_to_json(val);
    j["free"] = free;
    j["min_coefficient"] = int_to_json(min_coefficient);
    if (!extension_b.empty()) {
        nlohmann::json bs = nlohmann::json::array();
        for (const Int& b : extension_b) bs.push_back(int_to_json(b));
        j["b"] = bs;
    }
    return j;
}

nlohmann::json ConstructedTuple::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension;
    j["kind"] = kind;
    nlohmann::json streams_j = nlohmann::json::array();
    for (const auto& s : streams) streams_j.push_back(s.str());
    j["streams"] = streams_j;
    nlohmann::json ledger_j = nlohmann::json::array();
    for (const auto& e : ledger) {
        nlohmann::json ej;
        ej["l"] = e.l;
        ej["q"] = e.q.str();
        ej["alpha1_index"] = e.alpha1_index;
        if (e.alpha3_index) ej["alpha3_index"] = *e.alpha3_index;
        ledger_j.push_back(ej);
    }
    j["ledger"] = ledger_j;
    nlohmann::json solved_j = nlohmann::json::object();
    for (const auto& [pos, val] : solved) solved_j[std::to_string(pos)] = int_to_json(val);
    j["solved"] = solved_j;
    j["min_coefficient"] = int_to_json(min_coefficient);
    if (!extension_b.empty()) {
        nlohmann::json bs = nlohmann::json::array();
        for (const Int& b : extension_b) bs.push_back(int_to_json(b));
        j["b"] = bs;
    }
    return j;
}

ConstructedTuple ConstructedTuple::from_json(const nlohmann::json& j) {
    ConstructedTuple t;
    t.dimension = j.at("dimension").get<int>();
    t.kind = j.value("kind", "general");
    for (const auto& s : j.at("streams"))
        t.streams.push_back(CoefficientStream::parse(s.get<std::string>()));
    for (const auto& ej : j.at("ledger")) {
        LedgerEntry e;
        e.l = ej.at("l").get<std::size_t>();
        e.q = parse_int(ej.at("q").get<std::string>());
        e.alpha1_index = ej.at("alpha1_index").get<std::size_t>();
        if (ej.contains("alpha3_index")) e.alpha3_index = ej.at("alpha3_index").get<std::size_t>();
        t.ledger.push_back(e);
    }
    if (j.contains("solved"))
        for (const auto& [key, val] : j.at("solved").items())
            t.solved[std::stoull(key)] = json_to_int(val);
    if (j.contains("min_coefficient")) t.min_coefficient = json_to_int(j.at("min_coefficient"));
    if (j.contains("b"))
        for (const auto& v : j.at("b")) t.extension_b.push_back(json_to_int(v));
    return t;
}

ConstructedTuple simple_pair(const CoefficientStream& alpha1, std::size_t ledger_depth) {
    if (alpha1.at(1) != 1) throw DomainError("simple pair requires alpha_1 in (1/2,1), i.e. a_1 = 1");
    CoefficientStream alpha2 = complement(alpha1);

    std::size_t depth2 = alpha2.max_depth(ledger_depth);
    auto conv2 = convergents(alpha2, depth2);
    auto conv1 = convergents(alpha1, depth2 + 1);

    ConstructedTuple t;
    t.dimension = 2;
    t.kind = "simple";
    t.streams = {alpha1, alpha2};
    for (std::size_t i = 1; i <= depth2; ++i) {
        if (conv2[i].q != conv1[i + 1].q)
            throw Error("internal: simple-pair denominator shift violated");
        t.ledger.push_back({i, conv2[i].q, i + 1, std::nullopt});
    }
    return t;
}

bool lemma_cond_holds(const Int& q_kl, const Int& q_km2, const Int& q_km3, const Int& a_km1) {
    if (q_kl < 1 || q_km2 < 1 || q_km3 < 1 || a_km1 < 1)
        throw DomainError("coprimality test needs positive inputs");
    Int b = gcd(q_kl, q_km2);
    Int c = q_kl / b;
    Int d = gcd(c, q_km3);
    Int e = c / d;
    return gcd(d, a_km1) == 1 && a_km1 % e == 0;
}

std::optional<Int> suggest_admissible_coefficient(const Int& q_kl, const Int& q_km2,
                                                  const Int& q_km3, const Int& min_a) {
    Int b = gcd(q_kl, q_km2);
    Int c = q_kl / b;
    Int d = gcd(c, q_km3);
    Int e = c / d;
    if (gcd(d, e) != 1) return std::nullopt;  // every multiple of e shares a factor with d
    Int m = (min_a + e - 1) / e;
    if (m < 1) m = 1;
    while (gcd(d, m) != 1) ++m;
    return e * m;
}

Int solve_congruence(const Int& q_m1, const Int& q_m2, const Int& modulus, const Int& rhs,
                     const Int& min_a) {
    if (modulus < 1) throw DomainError("solve_congruence: modulus must be positive");
    if (rhs < 0 || rhs >= modulus) throw DomainError("solve_congruence: rhs must lie in [0, modulus)");
    if (gcd(mod_floor(q_m1, modulus), modulus) != 1)
        throw DomainError("inadmissible congruence: gcd(multiplier, modulus) != 1");
    Int lo = min_a < 1 ? Int(1) : min_a;
    Int inv = mod_inverse(q_m1, modulus);
    Int a0 = mod_floor((rhs - q_m2) * inv, modulus);
    if (a0 >= lo) return a0;
    Int steps = (lo - a0 + modulus - 1) / modulus;
    return a0 + steps * modulus;
}

namespace {

ConstructedTuple build_pair(const CoefficientStream& alpha1_free,
                            const ConstructionSchedule& schedule, bool extended_mode) {
    schedule.validate();
    if (extended_mode && schedule.k.size() > 1 && schedule.extension_b.empty())
        throw DomainError("extended construction needs the schedule's \"b\" list");
    if (!extended_mode && !schedule.extension_b.empty())
        throw DomainError("schedule carries extension multipliers; use the extended construction");

    const std::size_t k1 = schedule.k.front();
    auto len = alpha1_free.length();
    if (!len || *len != k1)
        throw DomainError("alpha1 free part must be terminating with exactly k_1 = " +
                          std::to_string(k1) + " coefficients");

    const Int min_a = schedule.min_coefficient;
    std::vector<Int> a1;
    a1.reserve(schedule.k.back());
    for (std::size_t i = 1; i <= k1; ++i) a1.push_back(alpha1_free.at(i));

    // q[i] = q_i^1 (q[0] = 1, virtual q_{-1} = 0)
    std::vector<Int> q{1};
    q.reserve(schedule.k.back() + 1);
    auto push_q = [&](const Int& a) {
        Int prev2 = q.size() >= 2 ? q[q.size() - 2] : Int(0);
        q.push_back(a * q.back() + prev2);
    };
    for (const Int& a : a1) push_q(a);

    ConstructedTuple t;
    t.dimension = 2;
    t.kind = extended_mode ? "extended" : "general";
    t.min_coefficient = min_a;

    std::vector<Int> a2{q[k1]};      // a_1^2 = q_{k_1}^1, so q_1^2 = q_{k_1}^1
    std::vector<Int> q2{1, q[k1]};   // q_0^2, q_1^2
    std::vector<Int> p2{0, 1};       // numerators alongside (for the extended value)
    bool any_b_above_one = false;

    for (std::size_t l = 1; l < schedule.k.size(); ++l) {
        const std::size_t kl = schedule.k[l - 1];
        const std::size_t kn = schedule.k[l];
        for (std::size_t pos = kl + 1; pos <= kn - 1; ++pos) {
            auto it = schedule.free_coefficients.find(pos);
            if (it == schedule.free_coefficients.end())
                throw DomainError("schedule is missing the free coefficient at position " +
                                  std::to_string(pos));
            if (it->second < min_a)
                throw DomainError("free coefficient at position " + std::to_string(pos) +
                                  " is below min_coefficient");
            a1.push_back(it->second);
            push_q(it->second);
        }
        const Int& Q = q[kl];
        if (!lemma_cond_holds(Q, q[kn - 2], q[kn - 3], a1[kn - 2])) {
            auto hint = suggest_admissible_coefficient(Q, q[kn - 2], q[kn - 3], min_a);
            throw ConstructionError(
                l, "coprimality condition fails at step " + std::to_string(l) + " (coefficient a_" +
                       std::to_string(kn - 1) + " = " + a1[kn - 2].str() + ")" +
                       (hint ? "; smallest admissible value is " + hint->str()
                             : "; no admissible value exists"));
        }
        const Int b = extended_mode ? schedule.extension_b[l - 1] : Int(1);
        if (b > 1) any_b_above_one = true;
        const Int rhs_exact = b * q2[l - 1];
        const Int rhs = mod_floor(rhs_exact, Q);
        Int solved = solve_congruence(q[kn - 1], q[kn - 2], Q, rhs, min_a);
        if (extended_mode && b > 1) {
            if (b > solved)
                throw ConstructionError(l, "extension multiplier b = " + b.str() +
                                               " exceeds the solved coefficient " + solved.str());
            if (solved <= 4 * b)
                throw ConstructionError(l, "side condition a/(2b) > 2 fails: a = " + solved.str() +
                                               ", b = " + b.str());
        }
        a1.push_back(solved);
        push_q(solved);
        t.solved[kn] = solved;

        Int numer = solved * q[kn - 1] + q[kn - 2] - rhs_exact;
        if (numer % Q != 0) throw Error("internal: coefficient back-solve division is inexact");
        Int a2_next = numer / Q;
        if (a2_next < 1) throw ConstructionError(l, "derived alpha_2 coefficient is < 1");
        a2.push_back(a2_next);
        p2.push_back(a2_next * p2[l] + b * p2[l - 1]);
        q2.push_back(a2_next * q2[l] + b * q2[l - 1]);
        if (q2[l + 1] != q[kn]) throw Error("internal: ledger equality violated");
        if (extended_mode) t.extension_b.push_back(b);
    }

    for (std::size_t l = 1; l <= schedule.k.size(); ++l)
        t.ledger.push_back({l, q2[l], schedule.k[l - 1], std::nullopt});

    // Streams continue past the constructed block with min_coefficient
    // repeating; only the ledger levels carry guarantees.
    t.streams.push_back(CoefficientStream::periodic(a1, {min_a}));
    if (schedule.k.size() == 1) {
        t.streams.push_back(CoefficientStream::terminating(a2));
    } else if (any_b_above_one) {
        // alpha_2 is the value of a generalized expansion; re-expand the
        // exact rational.
        t.streams.push_back(rational_to_cf(Rat(p2.back(), q2.back())));
    } else {
        t.streams.push_back(CoefficientStream::periodic(a2, {min_a}));
    }
    return t;
}

}  // namespace

ConstructedTuple general_construct(const CoefficientStream& alpha1_free,
                                   const ConstructionSchedule& schedule) {
    return build_pair(alpha1_free, schedule, false);
}

ConstructedTuple extended_construct(const CoefficientStream& alpha1_free,
                                    const ConstructionSchedule& schedule) {
    ConstructionSchedule sched = schedule;
    if (sched.extension_b.empty() && sched.k.size() > 1)
        sched.extension_b.assign(sched.k.size() - 1, Int(1));
    return build_pair(alpha1_free, sched, true);
}

ConstructedTuple construct_3d(const CoefficientStream& alpha1_free,
                              const ConstructionSchedule& schedule) {
    if (alpha1_free.at(1) != 1)
        throw DomainError("3d construction requires a_1^1 = 1 (alpha_1 in (1/2,1))");
    ConstructedTuple t = general_construct(alpha1_free, schedule);
    t.dimension = 3;
    t.kind = "3d";
    t.streams.push_back(complement(t.streams[0]));

    // q_j^3 = q_{j+1}^1, so the ledger value appears at index k_l - 1.
    auto conv3 = convergents(t.streams[2], schedule.k.back() - 1);
    for (auto& e : t.ledger) {
        e.alpha3_index = e.alpha1_index - 1;
        if (conv3[*e.alpha3_index].q != e.q)
            throw Error("internal: alpha_3 denominator does not match the ledger");
    }
    return t;
}

}  // namespace kron
