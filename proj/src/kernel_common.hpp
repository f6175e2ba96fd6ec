#pragma once

#include "besov/grid.hpp"
#include "besov/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace besov::kernels::detail {

inline double power_term(double v, double p) {
    double a = std::abs(v);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

// Node range per axis for which the whole stencil x, x+h, ..., x+Mh stays in the box.
struct StencilDomain {
    std::vector<std::int64_t> lo, hi;
    std::int64_t offset = 0; // flat offset of one step h
    bool empty = false;
};

inline StencilDomain stencil_domain(const GridFunction& f, const Shift& h, int M) {
    StencilDomain d;
    const int N = f.dim();
    d.lo.resize(N);
    d.hi.resize(N);
    for (int a = 0; a < N; ++a) {
        auto n = static_cast<std::int64_t>(f.extents()[a]);
        std::int64_t reach = h[a] * M;
        d.lo[a] = reach < 0 ? -reach : 0;
        d.hi[a] = n - 1 - (reach > 0 ? reach : 0);
        if (d.hi[a] < d.lo[a]) d.empty = true;
        d.offset += h[a] * static_cast<std::int64_t>(f.strides()[a]);
    }
    return d;
}

inline double finish_norm(double acc, double p, double cell) {
    if (std::isinf(p)) return acc;
    return std::pow(acc * cell, 1.0 / p);
}

} // namespace besov::kernels::detail
