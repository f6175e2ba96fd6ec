#include "besov/normest.hpp"

#include "besov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace besov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> run_kernel(KernelChoice k, const GridFunction& f, std::span<const kernels::Shift> shifts, int M,
                                 double p) {
    return k == KernelChoice::Serial ? kernels::serial::shell_sup(f, shifts, M, p)
                                     : kernels::omp::shell_sup(f, shifts, M, p);
}

} // namespace

std::optional<GridFunction> iterated_difference(const GridFunction& f, std::span<const std::int64_t> steps, int M) {
    if (static_cast<int>(steps.size()) != f.dim()) throw ParameterError("shift dimension mismatch");
    const std::vector<double> w = kernels::binomial_weights(M);
    const int N = f.dim();
    Box box;
    std::vector<std::int64_t> lo(N), hi(N);
    std::int64_t offset = 0;
    for (int a = 0; a < N; ++a) {
        auto n = static_cast<std::int64_t>(f.extents()[a]);
        std::int64_t reach = steps[a] * M;
        lo[a] = reach < 0 ? -reach : 0;
        hi[a] = n - 1 - (reach > 0 ? reach : 0);
        if (hi[a] < lo[a]) return std::nullopt;
        box.lower.push_back(f.coord(a, static_cast<std::size_t>(lo[a])));
        box.upper.push_back(f.coord(a, static_cast<std::size_t>(hi[a])));
        offset += steps[a] * static_cast<std::int64_t>(f.strides()[a]);
    }
    GridFunction out(box, f.level());
    std::vector<double> x(static_cast<std::size_t>(N));
    std::vector<std::size_t> idx(static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t rem = i;
        for (int a = 0; a < N; ++a) {
            std::size_t c = rem / out.strides()[a];
            rem -= c * out.strides()[a];
            idx[a] = c + static_cast<std::size_t>(lo[a]);
        }
        auto base = static_cast<std::int64_t>(f.flat_index(idx));
        double v = 0.0;
        for (int k = 0; k <= M; ++k) v += w[k] * f[static_cast<std::size_t>(base + k * offset)];
        out[i] = v;
    }
    return out;
}

std::optional<GridFunction> iterated_difference_at(const GridFunction& f, std::span<const double> h, int M) {
    if (static_cast<int>(h.size()) != f.dim()) throw ParameterError("shift dimension mismatch");
    std::vector<std::int64_t> steps;
    for (double c : h) {
        double s = std::ldexp(c, f.level());
        if (s != std::floor(s)) throw AlignmentError("shift is not a multiple of the grid spacing");
        steps.push_back(static_cast<std::int64_t>(s));
    }
    return iterated_difference(f, steps, M);
}

double lp_norm_grid(const GridFunction& f, double p) {
    if (!(p > 0.0)) throw ParameterError("p must be positive or inf");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = f[i];
        if (v != 0.0) acc += f.node_weight(i) * std::pow(std::abs(v), p);
    }
    return std::pow(acc, 1.0 / p);
}

std::vector<kernels::Shift> shell_shifts(int dim, int grid_level, int j, bool diagonal) {
    if (j < 0 || j > grid_level - 1)
        throw ResolutionError("shell " + std::to_string(j) + " is not resolvable on a level-" +
                              std::to_string(grid_level) + " grid");
    std::vector<kernels::Shift> out;
    std::int64_t amin = std::int64_t{1} << (grid_level - j - 1);
    std::int64_t amax = 2 * amin;
    for (int axis = 0; axis < dim; ++axis)
        for (std::int64_t a = amin; a <= amax; ++a) {
            kernels::Shift h(static_cast<std::size_t>(dim), 0);
            h[axis] = a;
            out.push_back(std::move(h));
        }
    if (diagonal && dim >= 2) {
        auto dmin = static_cast<std::int64_t>(std::ceil(static_cast<double>(amin) / std::sqrt(2.0)));
        auto dmax = static_cast<std::int64_t>(std::floor(static_cast<double>(amax) / std::sqrt(2.0)));
        for (int i = 0; i < dim; ++i)
            for (int l = i + 1; l < dim; ++l)
                for (int sign : {1, -1})
                    for (std::int64_t a = std::max<std::int64_t>(dmin, 1); a <= dmax; ++a) {
                        kernels::Shift h(static_cast<std::size_t>(dim), 0);
                        h[i] = a;
                        h[l] = sign * a;
                        out.push_back(std::move(h));
                    }
    }
    return out;
}

NormReport besov_seminorm(const GridFunction& f, const BesovParams& params, int j_lo, int j_hi,
                          const ShellOptions& opts) {
    if (!(params.p > 0.0) || !(params.q > 0.0)) throw ParameterError("p and q must be positive or inf");
    if (params.M < 1) throw ParameterError("difference order must be >= 1");
    if (j_lo < 0 || j_hi < j_lo) throw ParameterError("shell range must satisfy 0 <= j_lo <= j_hi");
    NormReport rep;
    rep.lp = lp_norm_grid(f, params.p);
    std::vector<int> skipped;
    for (int j = j_lo; j <= j_hi; ++j) {
        if (j > f.level() - 1) {
            skipped.push_back(j);
            continue;
        }
        auto shifts = shell_shifts(f.dim(), f.level(), j, opts.diagonal);
        auto mod = run_kernel(opts.kernel, f, shifts, params.M, params.p);
        if (!mod) {
            rep.flags.push_back("shell " + std::to_string(j) + ": empty difference domain");
            continue;
        }
        rep.shells.push_back(ShellEntry{j, 0.0, *mod});
    }
    if (!skipped.empty()) {
        std::string list;
        for (int j : skipped) list += (list.empty() ? "" : ",") + std::to_string(j);
        if (rep.shells.empty() && skipped.size() == static_cast<std::size_t>(j_hi - j_lo + 1))
            throw ResolutionError("no shell resolvable at grid level " + std::to_string(f.level()) +
                                  " (unresolved shells " + list + ")");
        rep.flags.push_back("unresolved shells skipped: " + list);
    }
    if (opts.cumulative) {
        double run = 0.0;
        for (auto it = rep.shells.rbegin(); it != rep.shells.rend(); ++it) {
            run = std::max(run, it->modulus);
            it->modulus = run;
        }
    }
    std::vector<double> vals;
    for (ShellEntry& e : rep.shells) {
        double weight = std::exp2(e.j * params.s);
        if (!params.psi.is_unit()) weight *= params.psi.at_level(e.j);
        e.value = weight * e.modulus;
        vals.push_back(e.value);
    }
    rep.seminorm = lp_norm(vals, params.q);
    rep.total = rep.lp + rep.seminorm;
    return rep;
}

NormReport holder_norm(const GridFunction& f, double alpha, int M, int j_lo, int j_hi) {
    if (!(alpha > 0.0) || !(alpha < M)) throw ParameterError("holder exponent must lie in (0, M)");
    BesovParams bp;
    bp.N = f.dim();
    bp.d = f.dim();
    bp.s = alpha;
    bp.p = kInf;
    bp.q = kInf;
    bp.M = M;
    return besov_seminorm(f, bp, j_lo, j_hi);
}

double bmo_norm(const GridFunction& f, int floor_level, std::optional<int> coarse_level) {
    const int N = f.dim();
    const int J = f.level();
    if (floor_level > J) throw ResolutionError("BMO floor finer than the grid");
    double min_extent = kInf;
    for (int a = 0; a < N; ++a) min_extent = std::min(min_extent, f.box().upper[a] - f.box().lower[a]);
    int coarse = coarse_level ? *coarse_level : static_cast<int>(std::ceil(-std::log2(min_extent)));
    if (coarse > floor_level) throw ParameterError("no BMO window between the coarse and floor levels");
    double best = 0.0;
    bool any = false;
    std::vector<std::int64_t> first(N), count(N), widx(N);
    for (int k = coarse; k <= floor_level; ++k) {
        // Windows of side 2^-k starting on the 2^-(k+1) lattice; nodes per side 2^(J-k).
        const std::int64_t side = std::int64_t{1} << (J - k);
        const std::int64_t step = std::max<std::int64_t>(side / 2, 1);
        bool empty = false;
        for (int a = 0; a < N; ++a) {
            // Window start in node units must be a multiple of step, relative to the origin.
            double lo = std::ldexp(f.box().lower[a], J);
            double hi = std::ldexp(f.box().upper[a], J);
            auto s0 = static_cast<std::int64_t>(std::ceil(lo / static_cast<double>(step))) * step;
            auto last = static_cast<std::int64_t>(hi) - side; // start + side <= hi
            if (last < s0) {
                empty = true;
                break;
            }
            first[a] = s0 - static_cast<std::int64_t>(lo);
            count[a] = (last - s0) / step + 1;
        }
        if (empty) continue;
        std::fill(widx.begin(), widx.end(), 0);
        // Closed windows with trapezoid weights, so the window averages are second order.
        const double total = std::pow(static_cast<double>(side), N);
        auto weight = [&](const std::vector<std::int64_t>& off) {
            double w = 1.0;
            for (int a = 0; a < N; ++a)
                if (off[a] == 0 || off[a] == side) w *= 0.5;
            return w;
        };
        while (true) {
            double sum = 0.0, osc = 0.0;
            for (int pass = 0; pass < 2; ++pass) {
                std::vector<std::int64_t> off(N, 0);
                double mean = sum / total;
                while (true) {
                    std::size_t flat = 0;
                    for (int a = 0; a < N; ++a)
                        flat += static_cast<std::size_t>(first[a] + widx[a] * step + off[a]) * f.strides()[a];
                    double w = weight(off);
                    if (pass == 0)
                        sum += w * f[flat];
                    else
                        osc += w * std::abs(f[flat] - mean);
                    int a = N - 1;
                    while (a >= 0 && off[a] == side) off[a--] = 0;
                    if (a < 0) break;
                    ++off[a];
                }
            }
            best = std::max(best, osc / total);
            any = true;
            int a = N - 1;
            while (a >= 0 && widx[a] == count[a] - 1) widx[a--] = 0;
            if (a < 0) break;
            ++widx[a];
        }
    }
    if (!any) throw ParameterError("no BMO window fits inside the box");
    return best;
}

std::vector<Plateau> decreasing_rearrangement(std::span<const double> values, std::span<const double> measures) {
    if (values.size() != measures.size()) throw ParameterError("values and measures differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(values[a]) > std::abs(values[b]); });
    std::vector<Plateau> out;
    double t = 0.0;
    for (std::size_t i : order) {
        if (measures[i] < 0.0) throw ParameterError("negative cell measure");
        if (measures[i] == 0.0) continue;
        double v = std::abs(values[i]);
        t += measures[i];
        if (!out.empty() && out.back().value == v)
            out.back().t_end = t;
        else
            out.push_back(Plateau{t, v});
    }
    return out;
}

std::vector<Plateau> decreasing_rearrangement(const GridFunction& f) {
    std::vector<double> w = f.node_weights();
    return decreasing_rearrangement(f.values(), w);
}

double weak_lp_norm(std::span<const Plateau> plateaus, double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ParameterError("weak-Lp exponent must be positive and finite");
    double best = 0.0;
    for (const Plateau& pl : plateaus) best = std::max(best, std::pow(pl.t_end, 1.0 / r) * pl.value);
    return best;
}

double weak_lp_norm(const GridFunction& f, double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ParameterError("weak-Lp exponent must be positive and finite");
    return weak_lp_norm(decreasing_rearrangement(f), r);
}

double lp_from_rearrangement(std::span<const Plateau> plateaus, double p) {
    if (!(p > 0.0)) throw ParameterError("p must be positive or inf");
    if (std::isinf(p)) return plateaus.empty() ? 0.0 : plateaus.front().value;
    double acc = 0.0, prev = 0.0;
    for (const Plateau& pl : plateaus) {
        if (pl.value != 0.0) acc += (pl.t_end - prev) * std::pow(pl.value, p);
        prev = pl.t_end;
    }
    return std::pow(acc, 1.0 / p);
}

} // namespace besov
