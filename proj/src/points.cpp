#include "kron/points.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace kron {

PointSet::PointSet(std::vector<Rat> alpha, std::size_t n, int index_base)
    : alpha_(std::move(alpha)), n_(n), base_(index_base) {
    if (alpha_.empty()) throw DomainError("point set needs at least one coordinate");
    if (base_ != 0 && base_ != 1) throw DomainError("index base must be 0 or 1");
    if (n_ < 1) throw DomainError("point set needs n >= 1");
    for (Rat& a : alpha_) a = frac(a);

    const std::size_t d = alpha_.size();
    std::vector<Int> den(d), num(d);
    scale_ = 1;
    for (std::size_t j = 0; j < d; ++j) {
        den[j] = denominator(alpha_[j]);
        num[j] = numerator(alpha_[j]);
        scale_ = boost::multiprecision::lcm(scale_, den[j]);
    }
    std::vector<Int> mult(d);
    for (std::size_t j = 0; j < d; ++j) mult[j] = scale_ / den[j];

    const std::size_t first = first_index();
    pts_.reserve(n_ - first + 1);
    std::vector<Int> cur(d, 0);  // n * num_j mod den_j, tracked incrementally
    for (std::size_t j = 0; j < d; ++j) cur[j] = mod_floor(Int(first) * num[j], den[j]);
    for (std::size_t idx = first; idx <= n_; ++idx) {
        std::vector<Int> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = cur[j] * mult[j];
        pts_.push_back(std::move(row));
        for (std::size_t j = 0; j < d; ++j) {
            cur[j] += num[j];
            if (cur[j] >= den[j]) cur[j] -= den[j];
        }
    }
}

TorusPoint PointSet::point(std::size_t idx) const {
    const auto& row = scaled(idx);
    std::vector<Rat> coords;
    coords.reserve(row.size());
    for (const Int& v : row) coords.emplace_back(v, scale_);
    return TorusPoint(std::move(coords));
}

PointSet generate(const std::vector<Rat>& alpha, std::size_t n, int index_base) {
    return PointSet(alpha, n, index_base);
}

}  // namespace kron
