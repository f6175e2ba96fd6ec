#include "besov/seqspace.hpp"

#include "besov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace besov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// m^{1/p} 2^e, exact when e is an integer and p = 1; falls back to logs on overflow.
double pow2_scaled(double m, double p, double e) {
    double n = std::floor(e);
    double v = std::ldexp(std::exp2(e - n) * std::pow(m, 1.0 / p), static_cast<int>(n));
    if (std::isfinite(v) && v > 0.0) return v;
    return std::exp(std::log(m) / p + e * std::log(2.0));
}

void check_exponent(double p, const char* name) {
    if (!(p > 0.0)) throw ParameterError(std::string(name) + " must be positive or inf");
}

std::uint64_t pow2(int j) { return std::uint64_t{1} << j; }

double entry(std::span<const double> lambda, std::uint64_t i) {
    // Lists are 1-based; anything past the end is a zero tail.
    if (i == 0 || i > lambda.size()) return 0.0;
    return lambda[i - 1];
}

void check_nonincreasing(std::span<const double> lambda) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] >= 0.0)) throw ParameterError("sequence entries must be nonnegative");
        if (i > 0 && lambda[i] > lambda[i - 1])
            throw MonotonicityError("sequence is not nonincreasing at index " + std::to_string(i + 1));
    }
}

} // namespace

double LevelRun::left_edge() const { return std::ldexp(static_cast<double>(start), -level); }

double LevelRun::right_edge() const { return std::ldexp(static_cast<double>(start + length), -level); }

DyadicSequence::DyadicSequence(int max_level) {
    if (max_level < 0 || max_level > kMaxSequenceLevel)
        throw ParameterError("sequence max level must lie in [0, " + std::to_string(kMaxSequenceLevel) + "]");
    runs_.resize(static_cast<std::size_t>(max_level) + 1);
    for (int j = 0; j <= max_level; ++j) {
        runs_[j].level = j;
        runs_[j].start = pow2(j);
    }
}

DyadicSequence DyadicSequence::from_runs(const std::vector<LevelRun>& runs, int max_level) {
    DyadicSequence seq(max_level);
    std::vector<bool> seen(static_cast<std::size_t>(max_level) + 1, false);
    for (const LevelRun& r : runs) {
        if (r.level < 0 || r.level > max_level)
            throw ParameterError("run level " + std::to_string(r.level) + " outside [0, max_level]");
        if (seen[r.level]) throw ParameterError("two runs on level " + std::to_string(r.level));
        seen[r.level] = true;
        if (!(r.value >= 0.0) || !std::isfinite(r.value))
            throw ParameterError("run value must be finite and nonnegative");
        if (r.length > 0) {
            std::uint64_t lo = pow2(r.level);
            if (r.start < lo || r.start + r.length > 2 * lo)
                throw ParameterError("run on level " + std::to_string(r.level) + " leaves [2^j, 2^{j+1})");
        }
        LevelRun placed = r;
        if (placed.length == 0) placed.start = pow2(r.level);
        seq.runs_[r.level] = placed;
    }
    return seq;
}

double DyadicSequence::lookup(int level, std::uint64_t k) const {
    if (level < 0 || level > max_level()) return 0.0;
    const LevelRun& r = runs_[level];
    return r.contains(k) ? r.value : 0.0;
}

double DyadicSequence::at_point(int level, double x) const {
    if (level < 0 || level > max_level() || !(x >= 0.0)) return 0.0;
    double y = std::floor(std::ldexp(x, level));
    if (y >= 18446744073709551615.0) return 0.0;
    return lookup(level, static_cast<std::uint64_t>(y));
}

std::vector<int> DyadicSequence::sweep_ends() const {
    std::vector<int> ends;
    for (const LevelRun& r : runs_)
        if (!r.empty() && r.start + r.length == 2 * pow2(r.level)) ends.push_back(r.level);
    return ends;
}

double lp_norm(std::span<const double> values, double p) {
    check_exponent(p, "p");
    if (p == kInf) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

BpqNormResult bpq_norm(const DyadicSequence& seq, double p, double q) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    BpqNormResult res;
    for (const LevelRun& r : seq.runs()) {
        double v = 0.0;
        if (!r.empty()) v = p == kInf ? r.value : std::pow(static_cast<double>(r.length), 1.0 / p) * r.value;
        res.per_level.push_back(v);
    }
    res.total = lp_norm(res.per_level, q);
    res.infinite = std::isinf(res.total);
    return res;
}

CondensationResult condensation_check(std::span<const double> lambda, int jmax, bool strict) {
    if (jmax < 0 || jmax > kMaxSequenceLevel - 2) throw ParameterError("condensation jmax out of range");
    if (strict) {
        check_nonincreasing(lambda);
    } else {
        for (double v : lambda)
            if (!(v >= 0.0)) throw ParameterError("sequence entries must be nonnegative");
    }
    CondensationResult res;
    std::uint64_t top = pow2(jmax + 1) - 1;
    std::uint64_t stop = std::min<std::uint64_t>(top, lambda.size());
    for (std::uint64_t i = 1; i <= stop; ++i) res.lower += entry(lambda, i);
    for (int j = 0; j <= jmax; ++j) res.condensed += std::ldexp(entry(lambda, pow2(j)), j);
    res.upper = 2.0 * res.lower;
    res.holds = res.lower <= res.condensed && res.condensed <= res.upper;
    return res;
}

double phi_bound(double x) {
    if (!(x > 0.0)) throw DomainError("phi_bound needs x > 0");
    if (x >= 1.0) return 4.0 / x;
    return 4.0 / x * (1.0 - std::log2(x));
}

DyadicPointResult dyadic_point_check(std::span<const double> lambda, double x, int jmax) {
    if (!(x > 0.0)) throw DomainError("dyadic_point_check needs x > 0");
    if (jmax < 0 || jmax > kMaxSequenceLevel) throw ParameterError("dyadic point bound jmax out of range");
    check_nonincreasing(lambda);
    DyadicPointResult res;
    for (int j = 0; j <= jmax; ++j) {
        double y = std::floor(std::ldexp(x, j));
        if (y > static_cast<double>(lambda.size())) break;
        auto k = static_cast<std::uint64_t>(y);
        // Index 0 only occurs for x < 1; lambda_0 is read as lambda_1.
        double v = k == 0 ? entry(lambda, 1) : entry(lambda, k);
        res.lhs += std::ldexp(v, j);
    }
    double total = 0.0;
    for (double v : lambda) total += v;
    res.rhs = phi_bound(x) * total;
    res.holds = res.lhs <= res.rhs;
    return res;
}

AmalgamResult amalgam_integral(std::span<const double> lambda, double p) {
    if (!(p > 0.0) || std::isinf(p)) throw ParameterError("amalgam_integral needs 0 < p < inf");
    if (lambda.size() >= (std::size_t{1} << 24)) throw ParameterError("amalgam_integral list too long");
    AmalgamResult res;
    double s = 0.0;
    for (double v : lambda) s += std::pow(std::abs(v), p);
    res.lhs = std::pow(s, 1.0 / p);

    // Levels k with T_k meeting the list; the integrand on [1,2) is constant on
    // cells of width 2^-K, K the top level.
    int K = 0;
    while (pow2(K + 1) <= lambda.size()) ++K;
    std::uint64_t cells = pow2(K);
    double integral = 0.0;
    for (std::uint64_t c = 0; c < cells; ++c) {
        double x = 1.0 + std::ldexp(static_cast<double>(c), -K);
        double integrand = 0.0;
        for (int k = 0; k <= K; ++k) {
            auto idx = static_cast<std::uint64_t>(std::floor(std::ldexp(x, k)));
            integrand += std::ldexp(std::pow(std::abs(entry(lambda, idx)), p), k);
        }
        integral += std::ldexp(integrand, -K);
    }
    res.rhs = std::pow(integral, 1.0 / p);
    return res;
}

DyadicSequence shift_blocks(std::span<const std::uint64_t> lengths, std::span<const double> values) {
    if (lengths.size() != values.size() || lengths.empty())
        throw ParameterError("shift_blocks needs matching nonempty length/value lists");
    int jmax = static_cast<int>(lengths.size()) - 1;
    std::vector<LevelRun> runs;
    const LevelRun* prev = nullptr;
    for (int j = 0; j <= jmax; ++j) {
        std::uint64_t L = lengths[j];
        if (L > pow2(j)) throw ParameterError("run longer than its level");
        if (L == 0) continue;
        std::uint64_t lo = pow2(j), hi = 2 * lo;
        std::uint64_t start = lo;
        if (prev != nullptr) {
            std::uint64_t prev_end = prev->start + prev->length;
            bool swept = prev_end == 2 * pow2(prev->level);
            if (!swept) start = prev_end << (j - prev->level);
            if (start + L > hi) start = hi - L;
        }
        runs.push_back(LevelRun{j, start, L, values[j]});
        prev = &runs.back();
    }
    return DyadicSequence::from_runs(runs, jmax);
}

DyadicSequence construct_zeta(int jmax) {
    if (jmax < 1 || jmax > kMaxSequenceLevel) throw ParameterError("construct_zeta needs 1 <= jmax <= 62");
    std::vector<std::uint64_t> lengths(static_cast<std::size_t>(jmax) + 1, 0);
    std::vector<double> values(lengths.size(), 0.0);
    for (int j = 1; j <= jmax; ++j) {
        lengths[j] = pow2(j) / static_cast<std::uint64_t>(j);
        values[j] = j;
    }
    return shift_blocks(lengths, values);
}

DyadicSequence construct_lambda(double p, double q, int jmax) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (std::isinf(p) || p >= q) throw ParameterError("construct_lambda needs 0 < p < q <= inf");
    DyadicSequence zeta = construct_zeta(jmax);
    std::vector<LevelRun> runs;
    for (const LevelRun& r : zeta.runs()) {
        if (r.empty()) continue;
        int j = r.level;
        // 2^{-j/p} xi^{1/p} with xi = j^{-sqrt(p/q)} zeta.
        double xi = r.value;
        if (!std::isinf(q)) xi *= std::pow(static_cast<double>(j), -std::sqrt(p / q));
        double value = pow2_scaled(xi, p, -j / p);
        runs.push_back(LevelRun{j, r.start, r.length, value});
    }
    return DyadicSequence::from_runs(runs, jmax);
}

double weighted_chi(double p, double q) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (std::isinf(q)) return p;
    return q * p / (q - p);
}

DyadicSequence construct_weighted_lambda(double p, double q, const AdmissibleFn& psi, int jmax) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (std::isinf(p) || p >= q) throw ParameterError("construct_weighted_lambda needs 0 < p < q <= inf");
    if (jmax < 1 || jmax > kMaxSequenceLevel) throw ParameterError("construct_weighted_lambda needs 1 <= jmax <= 62");
    double chi = weighted_chi(p, q);
    SeriesReport series = weight_series(psi, chi, 1000000);
    if (series.verdict == Verdict::Converges)
        throw PreconditionError("weight series with chi = " + std::to_string(chi) +
                                " converges; the construction needs it divergent");
    if (!std::isinf(q) && psi.direction() == Direction::Increasing) {
        double cinf = c_infinity(psi);
        if (!(chi * cinf < 1.0))
            throw PreconditionError("increasing weight needs chi < 1/c_inf (chi = " + std::to_string(chi) +
                                    ", c_inf = " + std::to_string(cinf) + ")");
    }

    // gamma_j = w_j / sum_{k<=j} w_k with w_j = beta_j (q = inf) or beta_j^{q/(q-p)}.
    double expo = std::isinf(q) ? 1.0 : q / (q - p);
    std::vector<double> log_beta(static_cast<std::size_t>(jmax) + 1);
    std::vector<std::uint64_t> lengths(log_beta.size());
    std::vector<double> values(log_beta.size());
    std::vector<double> log_gamma(log_beta.size());
    double cum = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        log_beta[j] = p * std::log(psi.at_level(j));
        double w = std::exp(expo * log_beta[j]);
        cum += w;
        double gamma = w / cum;
        log_gamma[j] = std::log(gamma);
        double len = std::floor(std::ldexp(gamma, j));
        // The pattern starts at level 1: T_0 carries no entries.
        lengths[j] = j == 0 ? 0 : std::min<std::uint64_t>(static_cast<std::uint64_t>(len), pow2(j));
        values[j] = 1.0 / gamma;
    }
    DyadicSequence placed = shift_blocks(lengths, values);
    std::vector<LevelRun> runs;
    for (const LevelRun& r : placed.runs()) {
        if (r.empty()) continue;
        int j = r.level;
        // q = inf: 2^{-j/p} (1/gamma)^{1/p}; q < inf: additionally tau^{1/p}, tau = gamma~/beta,
        // which collapses to (2^{-j}/beta_j)^{1/p}.
        double log_val = std::isinf(q) ? -log_gamma[j] : -log_beta[j];
        double value = std::exp((log_val - j * std::log(2.0)) / p);
        runs.push_back(LevelRun{j, r.start, r.length, value});
    }
    return DyadicSequence::from_runs(runs, jmax);
}

std::vector<double> witness_profile(const DyadicSequence& seq, double x, double p, int jmax) {
    check_exponent(p, "p");
    if (jmax < 0 || jmax > kMaxSequenceLevel) throw ParameterError("witness jmax out of range");
    std::vector<double> out(static_cast<std::size_t>(jmax) + 1, 0.0);
    for (int j = 0; j <= jmax; ++j) {
        double v = seq.at_point(j, x);
        if (v == 0.0) continue;
        out[j] = std::isinf(p) ? v : pow2_scaled(v, 1.0, j / p);
    }
    return out;
}

double level_density_constant(const QuarkCoeffs& lambda, std::span<const double> alpha, double p,
                          std::span<const double> samples) {
    check_exponent(p, "p");
    if (std::isinf(p)) throw ParameterError("level_density_constant needs finite p");
    const int N = lambda.dim();
    if (samples.empty() || samples.size() % static_cast<std::size_t>(N) != 0)
        throw ParameterError("level_density_constant needs a nonempty sample set of N-dimensional points");
    for (double a : alpha)
        if (!(a > 0.0)) throw ParameterError("alpha weights must be positive");

    // Per (j, beta): sum_k |lambda|^p, plus a lookup of entries by m.
    struct Block {
        double mass = 0.0;
        std::map<std::vector<std::int64_t>, double> values;
    };
    std::map<std::pair<int, std::vector<int>>, Block> blocks;
    for (const auto& [idx, v] : lambda.entries()) {
        if (idx.nu >= static_cast<int>(alpha.size())) continue;
        Block& b = blocks[{idx.nu, idx.beta}];
        double w = std::pow(std::abs(v), p);
        b.mass += w;
        b.values[idx.m] += v;
    }
    double C = 0.0;
    std::vector<std::int64_t> m(static_cast<std::size_t>(N));
    for (std::size_t s = 0; s < samples.size(); s += static_cast<std::size_t>(N)) {
        for (const auto& [key, blk] : blocks) {
            if (blk.mass == 0.0) continue;
            int j = key.first;
            for (int i = 0; i < N; ++i)
                m[i] = static_cast<std::int64_t>(std::floor(std::ldexp(samples[s + i], j)));
            auto it = blk.values.find(m);
            if (it == blk.values.end() || it->second == 0.0) continue;
            int order = 0;
            for (int b : key.second) order += b;
            double lhs = std::ldexp(std::pow(std::abs(it->second), p), j * N);
            double weight = std::max(1.0, std::pow(static_cast<double>(order), N + 1)) / alpha[j];
            C = std::max(C, lhs / (weight * blk.mass));
        }
    }
    return C;
}

} // namespace besov
