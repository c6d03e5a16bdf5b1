#include "kron/torus.hpp"

namespace kron {

MetricSpec MetricSpec::lp(unsigned p) {
    if (p < 1) throw DomainError("L_q metric needs q >= 1");
    return {p, false};
}

MetricSpec MetricSpec::parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "oo") return linf();
    for (char c : text)
        if (c < '0' || c > '9') throw DomainError("bad metric '" + std::string(text) + "'");
    unsigned long v = std::stoul(std::string(text));
    return lp(static_cast<unsigned>(v));
}

std::string MetricSpec::str() const { return infinite ? "inf" : std::to_string(p); }

TorusPoint::TorusPoint(std::vector<Rat> coords) : coords_(std::move(coords)) {
    for (Rat& c : coords_) c = frac(c);
}

Rat coord_norm(const Rat& x) {
    Rat f = frac(x);
    Rat other = 1 - f;
    return f < other ? f : other;
}

DistanceKey distance_key(const TorusPoint& x, const TorusPoint& y, const MetricSpec& m) {
    if (x.dimension() != y.dimension())
        throw DomainError("distance_key: dimension mismatch");
    if (m.infinite) {
        Rat best = 0;
        for (int i = 0; i < x.dimension(); ++i) {
            Rat n = coord_norm(x.coord(i) - y.coord(i));
            if (n > best) best = n;
        }
        return {best};
    }
    Rat sum = 0;
    for (int i = 0; i < x.dimension(); ++i) {
        Rat n = coord_norm(x.coord(i) - y.coord(i));
        Rat pw = 1;
        for (unsigned k = 0; k < m.p; ++k) pw *= n;
        sum += pw;
    }
    return {sum};
}

}  // namespace kron
