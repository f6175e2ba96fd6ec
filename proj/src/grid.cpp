#include "besov/grid.hpp"

#include "besov/error.hpp"

#include <cmath>
#include <string>

namespace besov {

Box Box::cube(int dim, double lo, double hi) {
    return Box{std::vector<double>(static_cast<std::size_t>(dim), lo),
               std::vector<double>(static_cast<std::size_t>(dim), hi)};
}

GridFunction::GridFunction(Box box, int level) : box_(std::move(box)), level_(level) {
    if (box_.lower.size() != box_.upper.size() || box_.lower.empty())
        throw ParameterError("box needs matching nonempty lower/upper bounds");
    if (level < 0 || level > 30) throw ParameterError("grid level must lie in [0, 30]");
    spacing_ = std::ldexp(1.0, -level);
    std::size_t total = 1;
    for (int a = 0; a < box_.dim(); ++a) {
        double lo = std::ldexp(box_.lower[a], level);
        double hi = std::ldexp(box_.upper[a], level);
        if (lo != std::floor(lo) || hi != std::floor(hi))
            throw AlignmentError("box bounds on axis " + std::to_string(a) + " are not multiples of 2^-" +
                                 std::to_string(level));
        if (hi < lo) throw ParameterError("box upper bound below lower bound");
        auto n = static_cast<std::size_t>(hi - lo) + 1;
        extents_.push_back(n);
        total *= n;
        if (total > (std::size_t{1} << 31)) throw ParameterError("grid too large");
    }
    strides_.assign(extents_.size(), 1);
    for (int a = box_.dim() - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * extents_[a + 1];
    values_.assign(total, 0.0);
}

double GridFunction::coord(int axis, std::size_t i) const {
    return box_.lower[axis] + static_cast<double>(i) * spacing_;
}

void GridFunction::coords(std::size_t flat, std::span<double> x) const {
    for (int a = 0; a < dim(); ++a) {
        std::size_t i = flat / strides_[a];
        flat -= i * strides_[a];
        x[a] = coord(a, i);
    }
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (int a = 0; a < dim(); ++a) f += idx[a] * strides_[a];
    return f;
}

double GridFunction::node_weight(std::size_t flat) const {
    double w = 1.0;
    for (int a = 0; a < dim(); ++a) {
        std::size_t i = flat / strides_[a];
        flat -= i * strides_[a];
        if (extents_[a] == 1) return 0.0;
        bool edge = i == 0 || i + 1 == extents_[a];
        w *= edge ? 0.5 * spacing_ : spacing_;
    }
    return w;
}

std::vector<double> GridFunction::axis_weights(int axis) const {
    std::vector<double> w(extents_[axis], spacing_);
    if (w.size() == 1) return {0.0};
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<double> GridFunction::node_weights() const {
    std::vector<double> w(size());
    for (std::size_t i = 0; i < size(); ++i) w[i] = node_weight(i);
    return w;
}

double GridFunction::measure() const {
    double m = 1.0;
    for (int a = 0; a < dim(); ++a) m *= box_.upper[a] - box_.lower[a];
    return m;
}

} // namespace besov
