#include "besov/quark.hpp"

#include "besov/error.hpp"
#include "besov/kernels.hpp"
#include "synth_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace besov {

namespace {

// log v(t) for |t| < 1, v(t) = exp(-1/(1+t)^2) exp(-1/(1-t)^2).
double log_v(double t) {
    double a = 1.0 + t;
    double b = 1.0 - t;
    return -1.0 / (a * a) - 1.0 / (b * b);
}

} // namespace

BumpFn::BumpFn(int dim) : dim_(dim) {
    if (dim < 1) throw ParameterError("bump dimension must be >= 1");
}

double BumpFn::profile(double t) {
    if (!(std::abs(t) < 1.0)) return 0.0;
    double lv = log_v(t);
    double denom = 1.0;
    // Neighbours v(t -+ 1) vanish unless they are inside (-1,1).
    if (t > 0.0) denom += std::exp(log_v(t - 1.0) - lv);
    if (t < 0.0) denom += std::exp(log_v(t + 1.0) - lv);
    return 1.0 / denom;
}

double BumpFn::line(double x) { return 0.5 * profile(0.5 * x); }

double BumpFn::operator()(std::span<const double> x) const {
    double v = 1.0;
    for (int i = 0; i < dim_ && v != 0.0; ++i) v *= line(x[i]);
    return v;
}

double BumpFn::monomial(std::span<const int> beta, std::span<const double> y) const {
    double v = (*this)(y);
    if (v == 0.0) return 0.0;
    for (int i = 0; i < dim_; ++i)
        if (beta[i] != 0) v *= std::pow(y[i], beta[i]);
    return v;
}

double BumpFn::r() const { return 1.0 + 0.5 * std::log2(static_cast<double>(dim_)); }

double BumpFn::inf_unit_cube() const {
    // psi1 decreases on [0,2], so its minimum over [0,1] sits at 1.
    return std::pow(line(1.0), dim_);
}

BumpFn psi_bump(int N) { return BumpFn(N); }

double quark_scale(int N, int nu, double s, double p, const AdmissibleFn& psi_w) {
    double e = std::isinf(p) ? -nu * s : -nu * (s - N / p);
    double v = std::exp2(e);
    if (!psi_w.is_unit()) v /= psi_w.at_level(nu);
    return v;
}

double quark_eval(const BumpFn& bump, std::span<const int> beta, int nu, std::span<const std::int64_t> m, double s,
                  double p, const AdmissibleFn& psi_w, std::span<const double> x) {
    const int N = bump.dim();
    std::vector<double> y(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) y[i] = std::ldexp(x[i], nu) - static_cast<double>(m[i]);
    double v = bump.monomial(beta, y);
    if (v == 0.0) return 0.0;
    return quark_scale(N, nu, s, p, psi_w) * v;
}

namespace detail {

SynthIndex::SynthIndex(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params)
    : bump_(bump), dim_(coeffs.dim()) {
    if (bump.dim() != coeffs.dim()) throw ParameterError("bump and coefficient dimensions differ");
    std::map<std::pair<std::vector<int>, int>, std::size_t> where;
    for (const auto& [idx, v] : coeffs.entries()) {
        auto key = std::make_pair(idx.beta, idx.nu);
        auto it = where.find(key);
        if (it == where.end()) {
            it = where.emplace(key, groups_.size()).first;
            groups_.push_back(Group{idx.beta, idx.nu, quark_scale(dim_, idx.nu, params.s, params.p, params.psi),
                                    idx.m, idx.m, {}});
        }
        Group& g = groups_[it->second];
        for (int i = 0; i < dim_; ++i) {
            g.lo[i] = std::min(g.lo[i], idx.m[i]);
            g.hi[i] = std::max(g.hi[i], idx.m[i]);
        }
        g.values[idx.m] += v;
        max_level_ = std::max(max_level_, idx.nu);
    }
}

double SynthIndex::eval(std::span<const double> x) const {
    const int N = dim_;
    std::vector<std::int64_t> base(static_cast<std::size_t>(N));
    std::vector<std::int64_t> m(static_cast<std::size_t>(N));
    std::vector<int> off(static_cast<std::size_t>(N));
    std::vector<double> y(static_cast<std::size_t>(N));
    double total = 0.0;
    for (const Group& g : groups_) {
        bool miss = false;
        for (int i = 0; i < N; ++i) {
            base[i] = static_cast<std::int64_t>(std::floor(std::ldexp(x[i], g.nu)));
            miss = miss || base[i] + 2 < g.lo[i] || base[i] - 1 > g.hi[i];
        }
        if (miss) continue;
        // |2^nu x_i - m_i| < 2 leaves m_i in base-1 .. base+2.
        std::fill(off.begin(), off.end(), -1);
        while (true) {
            for (int i = 0; i < N; ++i) m[i] = base[i] + off[i];
            auto it = g.values.find(m);
            if (it != g.values.end() && it->second != 0.0) {
                for (int i = 0; i < N; ++i) y[i] = std::ldexp(x[i], g.nu) - static_cast<double>(m[i]);
                double v = bump_.monomial(g.beta, y);
                if (v != 0.0) total += it->second * g.scale * v;
            }
            int a = N - 1;
            while (a >= 0 && off[a] == 2) off[a--] = -1;
            if (a < 0) break;
            ++off[a];
        }
    }
    return total;
}

} // namespace detail

double synthesize_point(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params,
                        std::span<const double> x) {
    return detail::SynthIndex(coeffs, bump, params).eval(x);
}

SynthesisResult synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                           int level) {
    GridFunction g = kernels::omp::synthesize(coeffs, bump, params, box, level);
    bool warn = coeffs.max_level() >= 0 && level < coeffs.max_level() + 1;
    return SynthesisResult{std::move(g), warn};
}

CounterexampleSpec CounterexampleSpec::make(int N, double s, double p, double q, AdmissibleFn psi,
                                            DyadicSequence sequence) {
    CounterexampleSpec spec;
    spec.N = N;
    spec.s = s;
    spec.p = p;
    spec.q = q;
    spec.psi = std::move(psi);
    spec.M = default_order(s);
    spec.C_M = 2 * (spec.M + 2);
    spec.jmax = sequence.max_level();
    spec.sequence = std::move(sequence);
    spec.validate();
    return spec;
}

void CounterexampleSpec::validate() const {
    if (N < 2) throw ParameterError("counterexample needs N >= 2");
    if (!(p > 0.0) || std::isinf(p)) throw ParameterError("counterexample needs finite p > 0");
    if (!(q > 0.0)) throw ParameterError("q must be positive or inf");
    if (!(p < q)) throw ParameterError("counterexample needs p < q");
    double sigma = N * std::max(1.0 / p - 1.0, 0.0);
    if (!(s > sigma)) throw ParameterError("counterexample needs s > sigma_p");
    if (M != default_order(s) || C_M != 2 * (M + 2)) throw ParameterError("inconsistent M / C_M");
    if (sequence.runs().empty()) throw ParameterError("counterexample needs a sequence");
}

BesovParams CounterexampleSpec::params() const { return BesovParams::make(N, N - 1, s, p, q, psi, M); }

QuarkCoeffs counterexample_coeffs(const CounterexampleSpec& spec, int level_cap) {
    spec.validate();
    BumpFn bump(spec.N);
    QuarkCoeffs out(spec.N, bump.default_decay());
    int cap = level_cap < 0 ? spec.sequence.max_level() : std::min(level_cap, spec.sequence.max_level());
    std::uint64_t count = 0;
    for (const LevelRun& r : spec.sequence.runs())
        if (r.level <= cap) count += r.length;
    if (count > 5'000'000) throw ParameterError("counterexample too large to materialize; lower the level cap");
    for (const LevelRun& r : spec.sequence.runs()) {
        if (r.level > cap || r.empty() || r.value == 0.0) continue;
        int j = r.level;
        auto centre = static_cast<std::int64_t>(spec.C_M) * (std::int64_t{1} << j) * j;
        QuarkIndex idx{std::vector<int>(static_cast<std::size_t>(spec.N), 0), j,
                       std::vector<std::int64_t>(static_cast<std::size_t>(spec.N), centre)};
        for (std::uint64_t k = r.start; k < r.start + r.length; ++k) {
            idx.m.back() = static_cast<std::int64_t>(k);
            out.set(idx, r.value);
        }
    }
    return out;
}

double lambda_profile(const CounterexampleSpec& spec, const BumpFn& bump, double x_last, int j) {
    (void)bump;
    if (j < 0 || j > spec.jmax) throw ParameterError("lambda_profile level out of range");
    const LevelRun& r = spec.sequence.run(j);
    if (r.empty()) return 0.0;
    double y = std::ldexp(x_last, j);
    double fl = std::floor(y);
    double sum = 0.0;
    for (int o = -1; o <= 2; ++o) {
        double k = fl + o;
        if (k < 0.0) continue;
        auto ki = static_cast<std::uint64_t>(k);
        if (!r.contains(ki)) continue;
        sum += BumpFn::line(y - k);
    }
    if (sum == 0.0) return 0.0;
    return r.value * std::exp2(j / spec.p) * sum;
}

double coeff_norm(const QuarkCoeffs& coeffs, double p, double q, double rho) {
    if (!(rho > 0.0)) throw ParameterError("coeff_norm needs rho > 0");
    if (!(p > 0.0) || !(q > 0.0)) throw ParameterError("p and q must be positive or inf");
    // beta -> level -> inner l^p accumulator.
    std::map<std::vector<int>, std::map<int, double>> acc;
    for (const auto& [idx, v] : coeffs.entries()) {
        double& a = acc[idx.beta][idx.nu];
        if (std::isinf(p))
            a = std::max(a, std::abs(v));
        else
            a += std::pow(std::abs(v), p);
    }
    double best = 0.0;
    for (const auto& [beta, levels] : acc) {
        std::vector<double> per_level;
        for (const auto& [nu, a] : levels) per_level.push_back(std::isinf(p) ? a : std::pow(a, 1.0 / p));
        int order = 0;
        for (int b : beta) order += b;
        best = std::max(best, std::exp2(rho * order) * lp_norm(per_level, q));
    }
    return best;
}

} // namespace besov
