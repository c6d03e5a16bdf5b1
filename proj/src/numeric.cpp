#include "kron/numeric.hpp"

namespace kron {

std::string to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

Int parse_int(std::string_view text) {
    if (text.empty()) throw DomainError("empty integer literal");
    try {
        return Int(std::string(text));
    } catch (const std::exception&) {
        throw DomainError("bad integer literal: '" + std::string(text) + "'");
    }
}

Rat parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    return Rat(num, den);
}

}  // namespace kron
