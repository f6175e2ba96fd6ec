#include "besov/error.hpp"
#include "besov/kernels.hpp"
#include "kernel_common.hpp"

#include <algorithm>
#include <cmath>

namespace besov::kernels {

std::vector<double> binomial_weights(int M) {
    if (M < 1 || M > 30) throw ParameterError("difference order must lie in [1, 30]");
    std::vector<double> w(static_cast<std::size_t>(M) + 1);
    double c = 1.0;
    for (int k = 0; k <= M; ++k) {
        w[k] = ((M - k) % 2 == 0 ? 1.0 : -1.0) * c;
        c = c * (M - k) / (k + 1);
    }
    return w;
}

namespace serial {

std::optional<double> shell_sup(const GridFunction& f, std::span<const Shift> shifts, int M, double p) {
    const std::vector<double> w = binomial_weights(M);
    const int N = f.dim();
    const double cell = std::pow(f.spacing(), N);
    const bool sup = std::isinf(p);
    auto vals = f.values();
    std::optional<double> best;
    for (const Shift& h : shifts) {
        if (static_cast<int>(h.size()) != N) throw ParameterError("shift dimension mismatch");
        auto dom = detail::stencil_domain(f, h, M);
        if (dom.empty) continue;
        std::vector<std::int64_t> idx(dom.lo);
        double acc = 0.0;
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
        double norm = detail::finish_norm(acc, p, cell);
        best = best ? std::max(*best, norm) : norm;
    }
    return best;
}

GridFunction synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                        int level) {
    if (bump.dim() != coeffs.dim() || box.dim() != coeffs.dim())
        throw ParameterError("synthesis dimensions disagree");
    GridFunction g(box, level);
    std::vector<double> x(static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.coords(i, x);
        double sum = 0.0;
        for (const auto& [idx, v] : coeffs.entries())
            sum += v * quark_eval(bump, idx.beta, idx.nu, idx.m, params.s, params.p, params.psi, x);
        g[i] = sum;
    }
    return g;
}

} // namespace serial
} // namespace besov::kernels
