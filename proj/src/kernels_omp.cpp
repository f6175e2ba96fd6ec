#include "besov/error.hpp"
#include "besov/kernels.hpp"
#include "kernel_common.hpp"
#include "synth_index.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace besov::kernels::omp {

namespace {

using Interval = std::pair<std::int64_t, std::int64_t>; // inclusive

std::vector<Interval> nonzero_runs(std::span<const double> v) {
    std::vector<Interval> runs;
    std::int64_t n = static_cast<std::int64_t>(v.size());
    for (std::int64_t i = 0; i < n;) {
        if (v[i] == 0.0) {
            ++i;
            continue;
        }
        std::int64_t j = i;
        while (j + 1 < n && v[j + 1] != 0.0) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

// Nodes x in [lo, hi] with some x + k a (0 <= k <= M) inside a nonzero run, merged ascending.
std::vector<Interval> stencil_cover(const std::vector<Interval>& runs, std::int64_t a, int M, std::int64_t lo,
                                    std::int64_t hi) {
    std::vector<Interval> cand;
    cand.reserve(runs.size() * static_cast<std::size_t>(M + 1));
    for (const auto& [s, e] : runs)
        for (int k = 0; k <= M; ++k) {
            std::int64_t b = std::max(s - k * a, lo);
            std::int64_t c = std::min(e - k * a, hi);
            if (b <= c) cand.emplace_back(b, c);
        }
    std::sort(cand.begin(), cand.end());
    std::vector<Interval> merged;
    for (const auto& iv : cand) {
        if (!merged.empty() && iv.first <= merged.back().second + 1)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

double dense_norm(const GridFunction& f, const Shift& h, const detail::StencilDomain& dom, const std::vector<double>& w,
                  int M, double p) {
    const int N = f.dim();
    const bool sup = std::isinf(p);
    auto vals = f.values();
    std::vector<std::int64_t> idx(dom.lo);
    double acc = 0.0;
    (void)h;
    while (true) {
        std::int64_t flat = 0;
        for (int a = 0; a < N; ++a) flat += idx[a] * static_cast<std::int64_t>(f.strides()[a]);
        double v = 0.0;
        for (int k = 0; k <= M; ++k) v += w[k] * vals[static_cast<std::size_t>(flat + k * dom.offset)];
        if (sup)
            acc = std::max(acc, std::abs(v));
        else
            acc += detail::power_term(v, p);
        int a = N - 1;
        while (a >= 0 && idx[a] == dom.hi[a]) {
            idx[a] = dom.lo[a];
            --a;
        }
        if (a < 0) break;
        ++idx[a];
    }
    return acc;
}

} // namespace

std::optional<double> shell_sup(const GridFunction& f, std::span<const Shift> shifts, int M, double p) {
    const std::vector<double> w = binomial_weights(M);
    const int N = f.dim();
    const double cell = std::pow(f.spacing(), N);
    const bool sup = std::isinf(p);
    for (const Shift& h : shifts)
        if (static_cast<int>(h.size()) != N) throw ParameterError("shift dimension mismatch");
    const std::vector<Interval> runs = N == 1 ? nonzero_runs(f.values()) : std::vector<Interval>{};
    auto vals = f.values();

    const auto count = static_cast<std::int64_t>(shifts.size());
    double best = -1.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best)
    for (std::int64_t t = 0; t < count; ++t) {
        const Shift& h = shifts[static_cast<std::size_t>(t)];
        auto dom = detail::stencil_domain(f, h, M);
        if (dom.empty) continue;
        double acc = 0.0;
        if (N == 1) {
            for (const auto& [b, e] : stencil_cover(runs, h[0], M, dom.lo[0], dom.hi[0]))
                for (std::int64_t x = b; x <= e; ++x) {
                    double v = 0.0;
                    for (int k = 0; k <= M; ++k) v += w[k] * vals[static_cast<std::size_t>(x + k * dom.offset)];
                    if (sup)
                        acc = std::max(acc, std::abs(v));
                    else
                        acc += detail::power_term(v, p);
                }
        } else {
            acc = dense_norm(f, h, dom, w, M, p);
        }
        best = std::max(best, detail::finish_norm(acc, p, cell));
    }
    if (best < 0.0) return std::nullopt;
    return best;
}

GridFunction synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                        int level) {
    if (bump.dim() != coeffs.dim() || box.dim() != coeffs.dim())
        throw ParameterError("synthesis dimensions disagree");
    GridFunction g(box, level);
    const besov::detail::SynthIndex index(coeffs, bump, params);
    const auto n = static_cast<std::int64_t>(g.size());
#pragma omp parallel
    {
        std::vector<double> x(static_cast<std::size_t>(g.dim()));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            g.coords(static_cast<std::size_t>(i), x);
            g[static_cast<std::size_t>(i)] = index.eval(x);
        }
    }
    return g;
}

} // namespace besov::kernels::omp
