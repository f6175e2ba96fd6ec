#pragma once

#include "besov/admissible.hpp"
#include "besov/coeffs.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace besov {

inline constexpr int kMaxSequenceLevel = 62;

// One constant-valued run inside T_j = [2^j, 2^{j+1}).
struct LevelRun {
    int level = 0;
    std::uint64_t start = 0;
    std::uint64_t length = 0;
    double value = 0.0;

    bool empty() const { return length == 0; }
    bool contains(std::uint64_t k) const { return k >= start && k - start < length; }
    double left_edge() const;
    double right_edge() const;
};

// lambda_{j,k}, stored as at most one run per level.
class DyadicSequence {
public:
    DyadicSequence() = default;
    explicit DyadicSequence(int max_level);

    // Validates every run and places it at its level; missing levels stay empty.
    static DyadicSequence from_runs(const std::vector<LevelRun>& runs, int max_level);

    int max_level() const { return static_cast<int>(runs_.size()) - 1; }
    const LevelRun& run(int level) const { return runs_.at(static_cast<std::size_t>(level)); }
    std::span<const LevelRun> runs() const { return runs_; }

    double lookup(int level, std::uint64_t k) const;
    // lookup(level, floor(2^level x)).
    double at_point(int level, double x) const;

    // Levels whose run ends exactly at x = 2.
    std::vector<int> sweep_ends() const;

private:
    std::vector<LevelRun> runs_;
};

double lp_norm(std::span<const double> values, double p);

struct BpqNormResult {
    std::vector<double> per_level;
    double total = 0.0;
    bool infinite = false;
};

BpqNormResult bpq_norm(const DyadicSequence& seq, double p, double q);

// Lists are indexed from 1: values[0] is lambda_1.
struct CondensationResult {
    double lower = 0.0;
    double condensed = 0.0;
    double upper = 0.0;
    bool holds = false;
};

CondensationResult condensation_check(std::span<const double> lambda, int jmax, bool strict = true);

double phi_bound(double x);

struct DyadicPointResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

DyadicPointResult dyadic_point_check(std::span<const double> lambda, double x, int jmax);

struct AmalgamResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

AmalgamResult amalgam_integral(std::span<const double> lambda, double p);

// Places the runs of lengths[j] with values[j] on successive levels so that each
// run starts where the previous one stopped in x-coordinates, sweeping [1,2)
// repeatedly. The first nonempty level is left at the start of T_j.
DyadicSequence shift_blocks(std::span<const std::uint64_t> lengths, std::span<const double> values);

DyadicSequence construct_zeta(int jmax);
DyadicSequence construct_lambda(double p, double q, int jmax);
DyadicSequence construct_weighted_lambda(double p, double q, const AdmissibleFn& psi, int jmax);

// Exponent of the weight series that the weighted construction needs divergent.
double weighted_chi(double p, double q);

std::vector<double> witness_profile(const DyadicSequence& seq, double x, double p, int jmax);

// Smallest C with 2^{jN}|lambda^beta_{j,floor(2^j x)}|^p <= C max(1,|beta|^{N+1}) / alpha_j
// * sum_k |lambda^beta_{j,k}|^p at every sample. samples is row-major, N per point.
double level_density_constant(const QuarkCoeffs& lambda, std::span<const double> alpha, double p,
                          std::span<const double> samples);

} // namespace besov
