#include "kron/cf.hpp"

#include <algorithm>
#include <cctype>

namespace kron {

namespace {

void require_positive(const std::vector<Int>& coeffs, const char* what) {
    for (const Int& a : coeffs) {
        if (a < 1) throw DomainError(std::string(what) + ": coefficients must be >= 1");
    }
}

}  // namespace

CoefficientStream CoefficientStream::terminating(std::vector<Int> prefix) {
    if (prefix.empty()) throw DomainError("terminating stream needs at least one coefficient");
    require_positive(prefix, "terminating stream");
    CoefficientStream s;
    s.prefix_ = std::move(prefix);
    s.tail_ = Terminating{};
    return s;
}

CoefficientStream CoefficientStream::periodic(std::vector<Int> prefix, std::vector<Int> period) {
    if (period.empty()) throw DomainError("periodic stream needs a nonempty period");
    require_positive(prefix, "periodic stream");
    require_positive(period, "periodic stream");
    CoefficientStream s;
    s.prefix_ = std::move(prefix);
    s.tail_ = Periodic{std::move(period)};
    return s;
}

CoefficientStream CoefficientStream::with_rule(std::vector<Int> prefix, Rule rule) {
    if (!rule) throw DomainError("rule stream needs a callable rule");
    require_positive(prefix, "rule stream");
    CoefficientStream s;
    s.prefix_ = std::move(prefix);
    s.tail_ = std::move(rule);
    return s;
}

Int CoefficientStream::at(std::size_t i) const {
    if (i == 0) return Int(0);
    if (i <= prefix_.size()) return prefix_[i - 1];
    if (const auto* p = std::get_if<Periodic>(&tail_)) {
        return p->period[(i - prefix_.size() - 1) % p->period.size()];
    }
    if (const auto* r = std::get_if<Rule>(&tail_)) {
        Int a = (*r)(i);
        if (a < 1) throw DomainError("rule stream produced a coefficient < 1");
        return a;
    }
    throw DomainError("coefficient index " + std::to_string(i) +
                      " exceeds terminating stream of length " +
                      std::to_string(prefix_.size()));
}

std::optional<std::size_t> CoefficientStream::length() const {
    if (is_terminating()) return prefix_.size();
    return std::nullopt;
}

std::size_t CoefficientStream::max_depth(std::size_t fallback) const {
    if (auto len = length()) return std::min(*len, fallback);
    return fallback;
}

std::string CoefficientStream::str() const {
    std::string out = "0;";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ',';
        out += prefix_[i].str();
    }
    if (const auto* p = std::get_if<Periodic>(&tail_)) {
        if (!prefix_.empty()) out += ',';
        out += '(';
        for (std::size_t i = 0; i < p->period.size(); ++i) {
            if (i) out += ',';
            out += p->period[i].str();
        }
        out += ')';
    } else if (std::holds_alternative<Rule>(tail_)) {
        throw DomainError("programmatic stream has no text form");
    }
    return out;
}

CoefficientStream CoefficientStream::parse(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
    }
    auto semi = cleaned.find(';');
    if (semi == std::string::npos)
        throw DomainError("stream literal needs the form \"0;a1,a2,...\": '" +
                          std::string(text) + "'");
    if (cleaned.substr(0, semi) != "0")
        throw DomainError("stream literal must start with a0 = 0");
    std::string rest = cleaned.substr(semi + 1);

    std::vector<Int> prefix;
    std::vector<Int> period;
    bool in_period = false;
    bool saw_period = false;
    std::string item;
    auto flush = [&](bool target_period) {
        if (item.empty()) throw DomainError("empty coefficient in stream literal");
        (target_period ? period : prefix).push_back(parse_int(item));
        item.clear();
    };
    for (std::size_t pos = 0; pos < rest.size(); ++pos) {
        char ch = rest[pos];
        if (ch == ',') {
            if (!item.empty()) flush(in_period);
        } else if (ch == '(') {
            if (in_period || saw_period)
                throw DomainError("only one periodic group is allowed");
            if (!item.empty()) flush(false);
            in_period = true;
            saw_period = true;
        } else if (ch == ')') {
            if (!in_period) throw DomainError("unmatched ')' in stream literal");
            if (!item.empty()) flush(true);
            in_period = false;
            if (pos + 1 != rest.size())
                throw DomainError("periodic group must end the stream literal");
        } else {
            item += ch;
        }
    }
    if (in_period) throw DomainError("unterminated periodic group");
    if (!item.empty()) flush(false);

    if (saw_period) {
        if (period.empty()) throw DomainError("empty periodic group");
        return periodic(std::move(prefix), std::move(period));
    }
    return terminating(std::move(prefix));
}

std::vector<Convergent> convergents(const CoefficientStream& s, std::size_t depth) {
    if (auto len = s.length(); len && depth > *len) {
        throw DomainError("depth " + std::to_string(depth) +
                          " exceeds terminating stream; maximal depth is " +
                          std::to_string(*len));
    }
    std::vector<Convergent> out;
    out.reserve(depth + 1);
    Int p_prev2 = 0, p_prev = 1;  // p_{-2}, p_{-1}
    Int q_prev2 = 1, q_prev = 0;  // q_{-2}, q_{-1}
    for (std::size_t n = 0; n <= depth; ++n) {
        Int a = s.at(n);
        Int p = a * p_prev + p_prev2;
        Int q = a * q_prev + q_prev2;
        out.push_back({n, p, q});
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return out;
}

Rat value_of(const CoefficientStream& s, std::size_t depth) {
    auto cs = convergents(s, depth);
    return Rat(cs.back().p, cs.back().q);
}

CoefficientStream rational_to_cf(const Rat& x) {
    if (!(x > 0 && x < 1)) throw DomainError("rational_to_cf: value must lie in (0,1)");
    Int num = numerator(x);
    Int den = denominator(x);
    // Euclid on (den, num); the final quotient is >= 2, so the expansion
    // is already canonical.
    std::vector<Int> coeffs;
    while (num != 0) {
        coeffs.push_back(den / num);
        Int r = den % num;
        den = num;
        num = r;
    }
    return CoefficientStream::terminating(std::move(coeffs));
}

CoefficientStream complement(const CoefficientStream& s) {
    if (s.at(1) != 1) throw DomainError("complement requires a_1 = 1");
    if (s.is_terminating() && s.length() == 1)
        throw DomainError("complement of [0;1] falls outside (0,1)");
    Int a2 = s.at(2);

    std::vector<Int> head{a2 + 1};
    const auto& pre = s.prefix();
    for (std::size_t i = 2; i < pre.size(); ++i) head.push_back(pre[i]);

    if (s.is_terminating()) return CoefficientStream::terminating(std::move(head));
    if (s.is_periodic()) {
        const auto& period = s.period();
        std::size_t m = period.size();
        // Coefficients shift down by one index; when a_2 (or a_1 and a_2)
        // came out of the period, rotate its phase accordingly.
        std::size_t consumed = pre.size() >= 2 ? 0 : 2 - pre.size();
        std::vector<Int> rotated(period.begin(), period.end());
        std::rotate(rotated.begin(), rotated.begin() + (consumed % m), rotated.end());
        return CoefficientStream::periodic(std::move(head), std::move(rotated));
    }
    CoefficientStream orig = s;
    return CoefficientStream::with_rule(
        std::move(head), [orig](std::size_t i) { return orig.at(i + 1); });
}

}  // namespace kron
