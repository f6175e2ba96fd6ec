#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace besov {

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    int dim() const { return static_cast<int>(lower.size()); }
    static Box cube(int dim, double lo, double hi);
};

// Samples on the nodes lower + i 2^-J of a box, row-major with the last axis fastest.
class GridFunction {
public:
    GridFunction(Box box, int level);

    template <class F>
    static GridFunction sample(Box box, int level, F&& f) {
        GridFunction g(std::move(box), level);
        std::vector<double> x(static_cast<std::size_t>(g.dim()));
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.coords(i, x);
            g.values_[i] = f(std::span<const double>(x));
        }
        return g;
    }

    int dim() const { return box_.dim(); }
    int level() const { return level_; }
    double spacing() const { return spacing_; }
    const Box& box() const { return box_; }
    const std::vector<std::size_t>& extents() const { return extents_; }
    const std::vector<std::size_t>& strides() const { return strides_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double coord(int axis, std::size_t i) const;
    void coords(std::size_t flat, std::span<double> x) const;
    std::size_t flat_index(std::span<const std::size_t> idx) const;

    // Trapezoid weights: spacing per axis, halved on boundary nodes.
    double node_weight(std::size_t flat) const;
    std::vector<double> axis_weights(int axis) const;
    std::vector<double> node_weights() const;
    double measure() const;

private:
    Box box_;
    int level_;
    double spacing_;
    std::vector<std::size_t> extents_;
    std::vector<std::size_t> strides_;
    std::vector<double> values_;
};

} // namespace besov
