#pragma once

// Exact arithmetic carriers and small integer helpers. Everything in this
// library computes over arbitrary-precision integers and rationals; no
// floating point participates in any comparison.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "kron/error.hpp"

namespace kron {

using Int = boost::multiprecision::cpp_int;
// Always stored in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& x) { return floor_div(numerator(x), denominator(x)); }

// Fractional part {x} = x - floor(x), in [0,1).
inline Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

// Nonnegative remainder in [0, m) for m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

struct Egcd {
    Int g, x, y;  // g = gcd(a,b) = a*x + b*y
};

inline Egcd extended_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

// Inverse of a modulo m (m >= 1); requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    if (m < 1) throw DomainError("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    Egcd e = extended_gcd(mod_floor(a, m), m);
    if (e.g != 1) throw DomainError("mod_inverse: arguments are not coprime");
    return mod_floor(e.x, m);
}

inline std::string to_string(const Int& v) { return v.str(); }

// Rationals travel as "p/q" strings (or "p" when q = 1).
std::string to_string(const Rat& v);
Rat parse_rational(std::string_view text);
Int parse_int(std::string_view text);

}  // namespace kron
