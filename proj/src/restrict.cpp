#include "besov/restrict.hpp"

#include "besov/error.hpp"
#include "besov/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace besov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Amplitude of level j in a counterexample slice: 2^{-j(s-(N-1)/p)} / Psi(2^-j).
double slice_amplitude(const CounterexampleSpec& spec, int j) {
    double a = std::exp2(-j * (spec.s - (spec.N - 1) / spec.p));
    if (!spec.psi.is_unit()) a /= spec.psi.at_level(j);
    return a;
}

int effective_cap(const CounterexampleSpec& spec, int cap) {
    return cap < 0 ? spec.jmax : std::min(cap, spec.jmax);
}

void check_scan_options(const ScanOptions& opts, const CounterexampleSpec& spec) {
    if (opts.n_samples < 1) throw ParameterError("scan needs at least one sample");
    if (spec.jmax > 48) throw ParameterError("scan jmax must be <= 48");
    if (opts.grid_check) {
        if (opts.grid_jmax < 2) throw ParameterError("grid check needs grid_jmax >= 2");
        if (opts.grid_jmax > opts.grid_level - 2)
            throw ResolutionError("grid check levels up to " + std::to_string(opts.grid_jmax) +
                                  " are not resolved on a level-" + std::to_string(opts.grid_level) + " grid");
        if (opts.grid_jmax > spec.jmax) throw ParameterError("grid_jmax exceeds the sequence depth");
    }
}

std::vector<int> default_j_list(const std::vector<int>& boundaries, int jmax) {
    std::vector<int> out;
    for (int b : boundaries)
        if (b <= jmax) out.push_back(b);
    if (out.empty() || out.back() != jmax) out.push_back(jmax);
    return out;
}

std::vector<double> running_max(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    double m = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) c[j] = m = std::max(m, w[j]);
    return c;
}

std::vector<double> lq_partial_sums(const std::vector<double>& w, double q) {
    if (std::isinf(q)) return running_max(w);
    std::vector<double> c(w.size());
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        s += std::pow(w[j], q);
        c[j] = std::pow(s, 1.0 / q);
    }
    return c;
}

BesovParams slice_params(const CounterexampleSpec& spec, double q, const AdmissibleFn& psi) {
    BesovParams bp;
    bp.N = spec.N - 1;
    bp.d = spec.N - 1;
    bp.s = spec.s;
    bp.p = spec.p;
    bp.q = q;
    bp.M = spec.M;
    bp.psi = psi;
    bp.validate();
    return bp;
}

// Smallest ratio grid/witness at level 1 across samples, then count the (sample, level)
// pairs on levels 2.. where grid < c * witness.
GridCheck fit_and_check(std::vector<std::vector<double>> grid, const std::vector<std::vector<double>>& wit) {
    GridCheck gc;
    gc.performed = true;
    double c = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (wit[i][0] > 0.0) c = std::min(c, grid[i][0] / wit[i][0]);
    if (!std::isfinite(c) || !(c > 0.0)) {
        gc.fitted_c = 0.0;
        gc.violations = 1;
        gc.grid_values = std::move(grid);
        return gc;
    }
    gc.fitted_c = c;
    gc.worst_ratio = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t l = 1; l < grid[i].size(); ++l) {
            if (!(wit[i][l] > 0.0)) continue;
            ++gc.comparisons;
            double ratio = grid[i][l] / (c * wit[i][l]);
            gc.worst_ratio = std::min(gc.worst_ratio, ratio);
            if (ratio < 1.0) ++gc.violations;
        }
    if (gc.comparisons == 0) gc.worst_ratio = 0.0;
    gc.grid_values = std::move(grid);
    return gc;
}

} // namespace

double slice_point(const CounterexampleSpec& spec, const BumpFn& bump, std::span<const double> x_prime, double x_last,
                   int level_cap) {
    if (static_cast<int>(x_prime.size()) != spec.N - 1) throw ParameterError("slice point has wrong dimension");
    int cap = effective_cap(spec, level_cap);
    // Level-j blocks sit around x_1 = C_M j with radius 2^{1-j}; only neighbours of x_1 / C_M matter.
    auto centre = static_cast<int>(std::lround(x_prime[0] / spec.C_M));
    double total = 0.0;
    for (int j = std::max(0, centre - 1); j <= std::min(cap, centre + 1); ++j) {
        double prod = 1.0;
        for (double xi : x_prime) {
            prod *= BumpFn::line(std::ldexp(xi - static_cast<double>(spec.C_M) * j, j));
            if (prod == 0.0) break;
        }
        if (prod == 0.0) continue;
        double lam = lambda_profile(spec, bump, x_last, j);
        if (lam == 0.0) continue;
        total += lam * slice_amplitude(spec, j) * prod;
    }
    return total;
}

Box counterexample_slice_box(const CounterexampleSpec& spec, int level_cap) {
    int cap = effective_cap(spec, level_cap);
    return Box::cube(spec.N - 1, -2.0, static_cast<double>(spec.C_M) * std::max(cap, 1) + 2.0);
}

SliceResult slice(const CounterexampleSpec& spec, const BumpFn& bump, double x_last, const Box& box, int level,
                  int level_cap) {
    if (box.dim() != spec.N - 1) throw ParameterError("slice box must have dimension N-1");
    int cap = effective_cap(spec, level_cap);
    GridFunction g(box, level);
    std::vector<double> lam(static_cast<std::size_t>(cap) + 1);
    for (int j = 0; j <= cap; ++j) lam[j] = lambda_profile(spec, bump, x_last, j);
    std::vector<double> x(static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.coords(i, x);
        auto centre = static_cast<int>(std::lround(x[0] / spec.C_M));
        double total = 0.0;
        for (int j = std::max(0, centre - 1); j <= std::min(cap, centre + 1); ++j) {
            if (lam[j] == 0.0) continue;
            double prod = 1.0;
            for (double xi : x) {
                prod *= BumpFn::line(std::ldexp(xi - static_cast<double>(spec.C_M) * j, j));
                if (prod == 0.0) break;
            }
            if (prod != 0.0) total += lam[j] * slice_amplitude(spec, j) * prod;
        }
        g[i] = total;
    }
    return SliceResult{std::move(g), level < cap + 2};
}

Box coeffs_slice_box(const QuarkCoeffs& coeffs, int d) {
    if (d < 1 || d > coeffs.dim()) throw ParameterError("slice dimension out of range");
    Box b;
    b.lower.assign(static_cast<std::size_t>(d), kInf);
    b.upper.assign(static_cast<std::size_t>(d), -kInf);
    for (const auto& [idx, v] : coeffs.entries()) {
        if (v == 0.0) continue;
        for (int a = 0; a < d; ++a) {
            b.lower[a] = std::min(b.lower[a], std::ldexp(static_cast<double>(idx.m[a] - 2), -idx.nu));
            b.upper[a] = std::max(b.upper[a], std::ldexp(static_cast<double>(idx.m[a] + 2), -idx.nu));
        }
    }
    for (int a = 0; a < d; ++a) {
        if (!std::isfinite(b.lower[a])) {
            b.lower[a] = 0.0;
            b.upper[a] = 1.0;
            continue;
        }
        b.lower[a] = std::floor(b.lower[a]);
        b.upper[a] = std::ceil(b.upper[a]);
    }
    return b;
}

GridFunction slice_coeffs(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params,
                          std::span<const double> x_pp, const Box& box, int level) {
    const int N = coeffs.dim();
    const int codim = static_cast<int>(x_pp.size());
    const int d = N - codim;
    if (d < 1 || box.dim() != d || bump.dim() != N) throw ParameterError("slice dimensions disagree");
    GridFunction g(box, level);
    BumpFn inner(d), outer(codim);
    std::vector<double> ypp(static_cast<std::size_t>(codim)), yp(static_cast<std::size_t>(d));
    std::vector<std::int64_t> lo(d), hi(d), idx(d);
    for (const auto& [q, v] : coeffs.entries()) {
        if (v == 0.0) continue;
        for (int i = 0; i < codim; ++i) ypp[i] = std::ldexp(x_pp[i], q.nu) - static_cast<double>(q.m[d + i]);
        std::span<const int> beta_pp(q.beta.data() + d, static_cast<std::size_t>(codim));
        double fpp = outer.monomial(beta_pp, ypp);
        if (fpp == 0.0) continue;
        double amp = v * fpp * quark_scale(N, q.nu, params.s, params.p, params.psi);
        // Grid nodes inside the open support cube of the x' factor.
        bool empty = false;
        for (int a = 0; a < d; ++a) {
            double c0 = std::ldexp(static_cast<double>(q.m[a] - 2), -q.nu);
            double c1 = std::ldexp(static_cast<double>(q.m[a] + 2), -q.nu);
            lo[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((c0 - box.lower[a]) / g.spacing())));
            hi[a] = std::min<std::int64_t>(static_cast<std::int64_t>(g.extents()[a]) - 1,
                                           static_cast<std::int64_t>(std::floor((c1 - box.lower[a]) / g.spacing())));
            if (hi[a] < lo[a]) empty = true;
        }
        if (empty) continue;
        std::span<const int> beta_p(q.beta.data(), static_cast<std::size_t>(d));
        idx = lo;
        while (true) {
            std::size_t flat = 0;
            for (int a = 0; a < d; ++a) {
                yp[a] = std::ldexp(g.coord(a, static_cast<std::size_t>(idx[a])), q.nu) - static_cast<double>(q.m[a]);
                flat += static_cast<std::size_t>(idx[a]) * g.strides()[a];
            }
            double fp = inner.monomial(beta_p, yp);
            if (fp != 0.0) g[flat] += amp * fp;
            int a = d - 1;
            while (a >= 0 && idx[a] == hi[a]) {
                idx[a] = lo[a];
                --a;
            }
            if (a < 0) break;
            ++idx[a];
        }
    }
    return g;
}

double b_coefficient(const QuarkCoeffs& lambda, std::span<const int> beta_prime, int nu,
                     std::span<const std::int64_t> m_prime, std::span<const double> x_pp, double p) {
    const int N = lambda.dim();
    const int codim = static_cast<int>(x_pp.size());
    const int d = N - codim;
    if (d < 1 || static_cast<int>(beta_prime.size()) != d || static_cast<int>(m_prime.size()) != d)
        throw ParameterError("b_coefficient dimensions disagree");
    BumpFn outer(codim);
    std::vector<double> y(static_cast<std::size_t>(codim));
    double sum = 0.0;
    for (const auto& [q, v] : lambda.entries()) {
        if (q.nu != nu) continue;
        if (!std::equal(beta_prime.begin(), beta_prime.end(), q.beta.begin())) continue;
        if (!std::equal(m_prime.begin(), m_prime.end(), q.m.begin())) continue;
        for (int i = 0; i < codim; ++i) y[i] = std::ldexp(x_pp[i], nu) - static_cast<double>(q.m[d + i]);
        std::span<const int> beta_pp(q.beta.data() + d, static_cast<std::size_t>(codim));
        sum += v * outer.monomial(beta_pp, y);
    }
    double scale = std::isinf(p) ? 1.0 : std::exp2(nu * codim / p);
    return scale * sum;
}

namespace {

// For entries whose x'' index equals floor(2^nu x'') + delta: beta' -> nu -> m' -> accumulated value.
using Nested = std::map<std::vector<int>, std::map<int, std::map<std::vector<std::int64_t>, double>>>;

template <class Acc>
Nested collect_matching(const QuarkCoeffs& lambda, std::span<const double> x_pp, std::span<const int> delta,
                        Acc&& key_of) {
    const int N = lambda.dim();
    const int codim = static_cast<int>(x_pp.size());
    const int d = N - codim;
    if (d < 1 || static_cast<int>(delta.size()) != codim) throw ParameterError("J-functional dimensions disagree");
    Nested out;
    for (const auto& [q, v] : lambda.entries()) {
        bool match = true;
        for (int i = 0; i < codim && match; ++i) {
            auto want = static_cast<std::int64_t>(std::floor(std::ldexp(x_pp[i], q.nu))) + delta[i];
            match = q.m[d + i] == want;
        }
        if (!match) continue;
        std::vector<std::int64_t> mp(q.m.begin(), q.m.begin() + d);
        out[key_of(q)][q.nu][mp] += std::abs(v);
    }
    return out;
}

// (sum_nu (sum_m' |x|^p scale_nu)^{q/p})^{1/q} with the usual sup modifications.
double mixed_norm(const std::map<int, std::map<std::vector<std::int64_t>, double>>& levels, double p, double q,
                  int codim, bool scale_inside) {
    std::vector<double> per_level;
    for (const auto& [nu, ms] : levels) {
        double inner = 0.0;
        if (std::isinf(p)) {
            for (const auto& [m, x] : ms) inner = std::max(inner, x);
        } else {
            double w = scale_inside ? std::exp2(nu * codim) : 1.0;
            for (const auto& [m, x] : ms) inner += std::pow(x, p) * w;
            inner = std::pow(inner, 1.0 / p);
        }
        per_level.push_back(inner);
    }
    return lp_norm(per_level, q);
}

} // namespace

double j_functional(const QuarkCoeffs& lambda, std::span<const double> x_pp, double p, double q, double rho,
                    std::span<const int> delta) {
    if (!(p > 0.0) || !(q > 0.0)) throw ParameterError("p and q must be positive or inf");
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    const int codim = static_cast<int>(x_pp.size());
    const int d = lambda.dim() - codim;
    // b^{beta',delta}_{nu,m'} = 2^{nu codim/p} sum_{beta''} |lambda|: grouping by beta' sums over beta''.
    Nested groups = collect_matching(lambda, x_pp, delta, [d](const QuarkIndex& q) {
        return std::vector<int>(q.beta.begin(), q.beta.begin() + d);
    });
    double best = 0.0;
    for (const auto& [bp, levels] : groups) {
        int order = 0;
        for (int b : bp) order += b;
        best = std::max(best, std::exp2(rho * order) * mixed_norm(levels, p, q, codim, true));
    }
    return best;
}

double jbound_constant(double a, double p, double q, int codim) {
    if (!(a > 0.0)) throw ParameterError("the J-functional bound needs rho' < rho0");
    auto K = [codim](double alpha) { return std::pow(1.0 - std::exp2(-alpha), -codim); };
    double c = K(a / 2.0);
    if (!std::isinf(p)) c *= std::pow(K(p * a / 4.0), 1.0 / p);
    if (!std::isinf(q)) c *= std::pow(K(q * a / 4.0), 1.0 / q);
    return c;
}

JBoundResult jbound_check(const QuarkCoeffs& lambda, std::span<const double> x_pp, double p, double q,
                            double rho_prime, double rho0, std::span<const int> delta) {
    const int codim = static_cast<int>(x_pp.size());
    JBoundResult res;
    res.constant = jbound_constant(rho0 - rho_prime, p, q, codim);
    res.lhs = j_functional(lambda, x_pp, p, q, rho_prime, delta);
    Nested groups = collect_matching(lambda, x_pp, delta, [](const QuarkIndex& q) { return q.beta; });
    double sup = 0.0;
    for (const auto& [beta, levels] : groups) {
        int order = 0;
        for (int b : beta) order += b;
        sup = std::max(sup, std::exp2(rho0 * order) * mixed_norm(levels, p, q, codim, true));
    }
    res.rhs = res.constant * sup;
    res.holds = res.lhs <= res.rhs * (1.0 + 1e-12);
    return res;
}

RestrictionBound restriction_bound_check(const QuarkCoeffs& coeffs, const BesovParams& params, const Box& strip,
                                         int n_samples, const BoundOptions& opts) {
    if (!(params.q <= params.p))
        throw ParameterError("restriction bound needs q <= p (for p < q the restriction can fail)");
    if (n_samples < 1) throw ParameterError("restriction bound needs a positive sampling budget");
    const int N = coeffs.dim();
    const int codim = strip.dim();
    const int d = N - codim;
    if (d < 1) throw ParameterError("strip dimension must be below N");
    BesovParams sp = params;
    sp.N = d;
    sp.d = d;
    sp.validate();
    BumpFn bump(N);
    double rho = opts.rho > 0.0 ? opts.rho : bump.default_decay();
    RestrictionBound res;
    res.rhs_surrogate = coeff_norm(coeffs, params.p, params.q, rho);
    if (coeffs.empty()) return res;

    Box box = coeffs_slice_box(coeffs, d);
    double vol = 1.0;
    for (int a = 0; a < codim; ++a) vol *= strip.upper[a] - strip.lower[a];
    std::vector<int> idx(static_cast<std::size_t>(codim), 0);
    std::vector<double> xpp(static_cast<std::size_t>(codim));
    double acc = 0.0;
    std::size_t count = 0;
    ShellOptions so;
    so.kernel = opts.kernel;
    while (true) {
        for (int a = 0; a < codim; ++a)
            xpp[a] = strip.lower[a] + (idx[a] + 0.5) * (strip.upper[a] - strip.lower[a]) / n_samples;
        GridFunction g = slice_coeffs(coeffs, bump, params, xpp, box, opts.grid_level);
        NormReport rep = besov_seminorm(g, sp, opts.j_lo, opts.j_hi, so);
        res.slice_norms.push_back(rep.total);
        if (std::isinf(params.q))
            acc = std::max(acc, rep.total);
        else
            acc += std::pow(rep.total, params.q);
        ++count;
        int a = codim - 1;
        while (a >= 0 && idx[a] == n_samples - 1) idx[a--] = 0;
        if (a < 0) break;
        ++idx[a];
    }
    res.lhs = std::isinf(params.q) ? acc : std::pow(vol * acc / static_cast<double>(count), 1.0 / params.q);
    res.ratio = res.rhs_surrogate > 0.0 ? res.lhs / res.rhs_surrogate : 0.0;
    return res;
}

bool grows_across_sweeps(std::span<const double> curve, std::span<const int> boundaries) {
    std::vector<int> b;
    for (int x : boundaries)
        if (x >= 0 && x < static_cast<int>(curve.size())) b.push_back(x);
    if (b.size() < 3) return false;
    std::size_t n = b.size();
    return curve[b[n - 1]] > curve[b[n - 2]] && curve[b[n - 2]] > curve[b[n - 3]];
}

DivergenceReport restriction_divergence_scan(const CounterexampleSpec& spec, ScanMode mode, const ScanOptions& opts) {
    spec.validate();
    check_scan_options(opts, spec);
    if (mode == ScanMode::Weighted) {
        if (!opts.target_weight) throw ParameterError("weighted scan needs a target weight");
        if (!spec.psi.is_unit()) throw ParameterError("weighted scan expects an unweighted counterexample");
    } else if (opts.target_weight) {
        throw ParameterError("unweighted scan takes no target weight");
    }
    const int J = spec.jmax;
    DivergenceReport rep;
    rep.mode = to_string(mode);
    rep.sweep_boundaries = spec.sequence.sweep_ends();
    rep.j_list = opts.j_list.empty() ? default_j_list(rep.sweep_boundaries, J) : opts.j_list;
    rep.samples = draw_nondyadic(opts.seed, opts.n_samples, 1.0, 2.0, J);
    const AdmissibleFn target = mode == ScanMode::Weighted ? *opts.target_weight : spec.psi;
    for (double x : rep.samples) {
        std::vector<double> w = witness_profile(spec.sequence, x, spec.p, J);
        int covered = 0;
        for (int j = 0; j <= J; ++j) {
            if (w[j] > 0.0) ++covered;
            if (mode == ScanMode::Weighted && w[j] > 0.0) w[j] *= target.at_level(j);
        }
        // In the weighted mode with q < inf the target aggregates shells in l^q.
        std::vector<double> c = mode == ScanMode::Weighted ? lq_partial_sums(w, spec.q) : running_max(w);
        rep.divergent.push_back(grows_across_sweeps(c, rep.sweep_boundaries));
        rep.covered_levels.push_back(covered);
        rep.witness.push_back(std::move(w));
        rep.curves.push_back(std::move(c));
    }
    rep.divergent_fraction =
        static_cast<double>(std::count(rep.divergent.begin(), rep.divergent.end(), true)) / rep.samples.size();

    if (opts.grid_check) {
        const int cap = opts.grid_jmax;
        BumpFn bump(spec.N);
        BesovParams sp = slice_params(spec, kInf, mode == ScanMode::Weighted ? target : spec.psi);
        Box box = counterexample_slice_box(spec, cap);
        std::size_t ns = opts.grid_samples > 0 ? std::min<std::size_t>(opts.grid_samples, rep.samples.size())
                                               : rep.samples.size();
        std::vector<std::vector<double>> grid(ns), wit(ns);
        ShellOptions so;
        so.kernel = opts.kernel;
        for (std::size_t i = 0; i < ns; ++i) {
            SliceResult sl = slice(spec, bump, rep.samples[i], box, opts.grid_level, cap);
            NormReport nr = besov_seminorm(sl.grid, sp, 1, cap, so);
            for (const ShellEntry& e : nr.shells) grid[i].push_back(e.value);
            for (int j = 1; j <= cap; ++j) wit[i].push_back(rep.witness[i][j]);
        }
        rep.grid = fit_and_check(std::move(grid), wit);
    }
    return rep;
}

double bmo_bump_constant() {
    // Midpoint rule on [-1,1]; psi is smooth so 2^16 cells are far below double noise needs.
    const int n = 1 << 16;
    const double h = 2.0 / n;
    std::vector<double> v(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = BumpFn::line(-1.0 + (i + 0.5) * h);
        mean += v[i];
    }
    mean /= n;
    double osc = 0.0;
    for (double x : v) osc += std::abs(x - mean);
    return osc / n;
}

double weak_lp_bump_norm(double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ParameterError("weak-Lp exponent must be positive and finite");
    // psi is even and decreasing on [0,2], so psi*(t) = psi(t/2); maximise t^{1/r} psi(t/2) on (0,4).
    auto g = [r](double t) { return std::pow(t, 1.0 / r) * BumpFn::line(0.5 * t); };
    const int n = 1 << 14;
    double best_t = 0.0, best = 0.0;
    for (int i = 1; i < n; ++i) {
        double t = 4.0 * i / n;
        if (g(t) > best) {
            best = g(t);
            best_t = t;
        }
    }
    double a = std::max(best_t - 4.0 / n, 0.0), b = std::min(best_t + 4.0 / n, 4.0);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
        double c = b - phi * (b - a), d = a + phi * (b - a);
        if (g(c) > g(d))
            b = d;
        else
            a = c;
    }
    return std::max(best, g(0.5 * (a + b)));
}

DivergenceReport embedding_failure_scan(const CounterexampleSpec& spec, EmbeddingMode mode, const ScanOptions& opts) {
    spec.validate();
    check_scan_options(opts, spec);
    if (!spec.psi.is_unit()) throw ParameterError("embedding scans use the unweighted counterexample");
    if (spec.N != 2) throw ParameterError("embedding scans are built for N = 2 (d = 1)");
    if (opts.target_weight) throw ParameterError("embedding scans take no target weight");
    const double sp = spec.s * spec.p;
    const double dd = spec.d();
    bool ok = mode == EmbeddingMode::Holder ? sp > dd : mode == EmbeddingMode::Bmo ? sp == dd : sp < dd;
    if (!ok) throw ParameterError(std::string("mode ") + to_string(mode) + " does not match the regime s p = " +
                                  std::to_string(sp));
    const int J = spec.jmax;
    BumpFn bump(spec.N);
    const double r = mode == EmbeddingMode::WeakLp ? spec.p / (1.0 - sp) : 0.0;
    const double c_fixed = mode == EmbeddingMode::Bmo      ? bmo_bump_constant()
                           : mode == EmbeddingMode::WeakLp ? weak_lp_bump_norm(r)
                                                           : 1.0;
    DivergenceReport rep;
    rep.mode = to_string(mode);
    rep.sweep_boundaries = spec.sequence.sweep_ends();
    rep.j_list = opts.j_list.empty() ? default_j_list(rep.sweep_boundaries, J) : opts.j_list;
    rep.samples = draw_nondyadic(opts.seed, opts.n_samples, 1.0, 2.0, J);
    for (double x : rep.samples) {
        std::vector<double> w;
        if (mode == EmbeddingMode::Holder) {
            w = witness_profile(spec.sequence, x, spec.p, J);
        } else {
            w.resize(static_cast<std::size_t>(J) + 1);
            for (int j = 0; j <= J; ++j) w[j] = c_fixed * lambda_profile(spec, bump, x, j);
        }
        int covered = 0;
        for (int j = 0; j <= J; ++j)
            if (spec.sequence.at_point(j, x) > 0.0) ++covered;
        std::vector<double> c = running_max(w);
        rep.divergent.push_back(grows_across_sweeps(c, rep.sweep_boundaries));
        rep.covered_levels.push_back(covered);
        rep.witness.push_back(std::move(w));
        rep.curves.push_back(std::move(c));
    }
    rep.divergent_fraction =
        static_cast<double>(std::count(rep.divergent.begin(), rep.divergent.end(), true)) / rep.samples.size();

    if (opts.grid_check) {
        const int cap = opts.grid_jmax;
        std::size_t ns = opts.grid_samples > 0 ? std::min<std::size_t>(opts.grid_samples, rep.samples.size())
                                               : rep.samples.size();
        std::vector<std::vector<double>> grid(ns), wit(ns);
        for (std::size_t i = 0; i < ns; ++i) {
            if (mode == EmbeddingMode::Holder) {
                Box box = counterexample_slice_box(spec, cap);
                SliceResult sl = slice(spec, bump, rep.samples[i], box, opts.grid_level, cap);
                NormReport nr = holder_norm(sl.grid, spec.s - 1.0 / spec.p, spec.M, 1, cap);
                for (const ShellEntry& e : nr.shells) grid[i].push_back(e.value);
                for (int j = 1; j <= cap; ++j) wit[i].push_back(rep.witness[i][j]);
            } else {
                // Norm of the slice keeping levels <= t, against the running-max witness.
                for (int t = 1; t <= cap; ++t) {
                    Box box = counterexample_slice_box(spec, t);
                    SliceResult sl = slice(spec, bump, rep.samples[i], box, opts.grid_level, t);
                    double g = mode == EmbeddingMode::Bmo ? bmo_norm(sl.grid, opts.grid_level - 1)
                                                          : weak_lp_norm(sl.grid, r);
                    grid[i].push_back(g);
                    wit[i].push_back(rep.curves[i][t]);
                }
            }
        }
        rep.grid = fit_and_check(std::move(grid), wit);
    }
    return rep;
}

MembershipReport weighted_membership_check(const CounterexampleSpec& spec, const AdmissibleFn& psi,
                                           const ScanOptions& opts) {
    spec.validate();
    check_scan_options(opts, spec);
    if (!spec.psi.is_unit()) throw ParameterError("membership check expects an unweighted counterexample");
    double chi = weighted_chi(spec.p, spec.q);
    SeriesReport series = weight_series(psi, chi, 1000000);
    if (series.verdict != Verdict::Converges)
        throw PreconditionError("weight series with chi = " + std::to_string(chi) +
                                " diverges; restrictions are not controlled in this case");
    const int J = spec.jmax;
    MembershipReport rep;
    rep.samples = draw_nondyadic(opts.seed, opts.n_samples, 1.0, 2.0, J);
    std::vector<int> bounds = spec.sequence.sweep_ends();
    // Level-wise maxima give a bound valid for every x.
    std::vector<double> level_max(static_cast<std::size_t>(J) + 1, 0.0);
    for (const LevelRun& r : spec.sequence.runs())
        if (!r.empty()) level_max[r.level] = psi.at_level(r.level) * std::exp2(r.level / spec.p) * r.value;
    rep.lq_bound = lp_norm(level_max, spec.q);
    rep.bounded = std::isfinite(rep.lq_bound);
    for (double x : rep.samples) {
        std::vector<double> w = witness_profile(spec.sequence, x, spec.p, J);
        rep.control_divergent.push_back(grows_across_sweeps(running_max(w), bounds));
        for (int j = 0; j <= J; ++j)
            if (w[j] > 0.0) w[j] *= psi.at_level(j);
        double sup = *std::max_element(w.begin(), w.end());
        double lq = lp_norm(w, spec.q);
        rep.sup_witness.push_back(sup);
        rep.lq_partial.push_back(lq);
        rep.bounded = rep.bounded && lq <= rep.lq_bound * (1.0 + 1e-12);
        rep.weighted_witness.push_back(std::move(w));
    }
    if (opts.grid_check) {
        const int cap = opts.grid_jmax;
        BumpFn bump(spec.N);
        BesovParams sp = slice_params(spec, spec.q, psi);
        std::size_t ns = opts.grid_samples > 0 ? std::min<std::size_t>(opts.grid_samples, rep.samples.size())
                                               : rep.samples.size();
        ShellOptions so;
        so.kernel = opts.kernel;
        for (std::size_t i = 0; i < ns; ++i) {
            std::vector<double> growth;
            double prev = 0.0;
            for (int t = 1; t <= cap; ++t) {
                Box box = counterexample_slice_box(spec, t);
                SliceResult sl = slice(spec, bump, rep.samples[i], box, opts.grid_level, t);
                double g = besov_seminorm(sl.grid, sp, 1, cap, so).seminorm;
                if (t > 1) growth.push_back(prev > 0.0 ? (g - prev) / prev : 0.0);
                prev = g;
            }
            rep.grid_growth.push_back(std::move(growth));
        }
    }
    return rep;
}

EmbeddingBound embedding_bound_check(const DyadicSequence& seq, double p, double q, double r, const AdmissibleFn& phi,
                                     const AdmissibleFn& psi) {
    if (!(p > 0.0) || !(q > 0.0) || !(r > 0.0)) throw ParameterError("exponents must be positive");
    if (!(r <= p) || !(r < q)) throw ParameterError("embedding bound needs r <= p and r < q");
    BpqNormResult base = bpq_norm(seq, p, q);
    double chi = std::isinf(q) ? r : q * r / (q - r);
    std::vector<double> lhs_terms, rhs_terms, ratio_terms;
    for (std::size_t j = 0; j < base.per_level.size(); ++j) {
        double a = base.per_level[j];
        double ps = psi.at_level(static_cast<double>(j));
        double ph = phi.at_level(static_cast<double>(j));
        lhs_terms.push_back(ps * a);
        rhs_terms.push_back(ph * a);
        ratio_terms.push_back(ps / ph);
    }
    EmbeddingBound res;
    res.lhs = lp_norm(lhs_terms, r);
    res.factor = lp_norm(ratio_terms, chi);
    res.rhs = res.factor * lp_norm(rhs_terms, q);
    res.holds = res.lhs <= res.rhs * (1.0 + 1e-12);
    return res;
}

const char* to_string(ScanMode m) { return m == ScanMode::Weighted ? "weighted" : "unweighted"; }

const char* to_string(EmbeddingMode m) {
    switch (m) {
    case EmbeddingMode::Holder:
        return "holder";
    case EmbeddingMode::Bmo:
        return "bmo";
    case EmbeddingMode::WeakLp:
        return "weaklp";
    }
    return "?";
}

} // namespace besov
