#pragma once

#include "besov/coeffs.hpp"
#include "besov/grid.hpp"
#include "besov/normest.hpp"
#include "besov/params.hpp"
#include "besov/quark.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace besov {

// f(x', x_last) of the counterexample, summed over levels <= level_cap (< 0: all).
double slice_point(const CounterexampleSpec& spec, const BumpFn& bump, std::span<const double> x_prime, double x_last,
                   int level_cap = -1);

// x_1 in [-2, C_M cap + 2], remaining x' axes in [-2, 2] shifted to the block centres.
Box counterexample_slice_box(const CounterexampleSpec& spec, int level_cap);

struct SliceResult {
    GridFunction grid;
    bool resolution_warning = false;
};

SliceResult slice(const CounterexampleSpec& spec, const BumpFn& bump, double x_last, const Box& box, int level,
                  int level_cap = -1);

// Restriction of a synthesized function to x'' fixed (the last N-d coordinates).
GridFunction slice_coeffs(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params,
                          std::span<const double> x_pp, const Box& box, int level);

// Bounding box (integer aligned) of the x' projections of all quark supports.
Box coeffs_slice_box(const QuarkCoeffs& coeffs, int d);

double b_coefficient(const QuarkCoeffs& lambda, std::span<const int> beta_prime, int nu,
                     std::span<const std::int64_t> m_prime, std::span<const double> x_pp, double p);

double j_functional(const QuarkCoeffs& lambda, std::span<const double> x_pp, double p, double q, double rho,
                    std::span<const int> delta);

struct JBoundResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    bool holds = false;
};

// K_alpha = (1 - 2^-alpha)^{-(N-d)}; K_{a,p,q} = K_{a/2} K_{pa/4}^{1/p} K_{qa/4}^{1/q}, a factor
// being 1 when its exponent is infinite.
double jbound_constant(double a, double p, double q, int codim);

JBoundResult jbound_check(const QuarkCoeffs& lambda, std::span<const double> x_pp, double p, double q,
                            double rho_prime, double rho0, std::span<const int> delta);

struct RestrictionBound {
    double lhs = 0.0;
    double rhs_surrogate = 0.0;
    double ratio = 0.0;
    std::vector<double> slice_norms;
};

struct BoundOptions {
    int grid_level = 8;
    int j_lo = 0;
    int j_hi = 5;
    double rho = 0.0; // 0 selects the bump default
    KernelChoice kernel = KernelChoice::Parallel;
};

// Midpoint rule with n_samples nodes per axis of the strip.
RestrictionBound restriction_bound_check(const QuarkCoeffs& coeffs, const BesovParams& params, const Box& strip,
                                         int n_samples, const BoundOptions& opts = {});

enum class ScanMode { Unweighted, Weighted };
enum class EmbeddingMode { Holder, Bmo, WeakLp };

struct ScanOptions {
    int n_samples = 200;
    std::uint64_t seed = 1;
    std::vector<int> j_list;
    // Weight of the target space; required in Weighted mode, rejected otherwise.
    std::optional<AdmissibleFn> target_weight;
    bool grid_check = false;
    int grid_level = 10;
    int grid_jmax = 6;
    int grid_samples = 0; // 0 means all samples
    KernelChoice kernel = KernelChoice::Parallel;
};

struct GridCheck {
    bool performed = false;
    double fitted_c = 0.0;
    int comparisons = 0;
    int violations = 0;
    double worst_ratio = 0.0; // min over checked pairs of grid / (fitted_c * witness)
    std::vector<std::vector<double>> grid_values; // per checked sample, per level 1..grid_jmax
};

struct DivergenceReport {
    std::string mode;
    std::vector<double> samples;
    std::vector<int> j_list;
    std::vector<int> sweep_boundaries;
    std::vector<std::vector<double>> witness; // per sample, per level 0..jmax
    std::vector<std::vector<double>> curves;  // running max or l^q partial sums
    std::vector<int> covered_levels;
    std::vector<bool> divergent;
    double divergent_fraction = 0.0;
    GridCheck grid;
};

// Divergent verdict for a curve: strictly increasing across the last three sweep
// boundaries not beyond jmax (i.e. across the last two completed sweeps).
bool grows_across_sweeps(std::span<const double> curve, std::span<const int> boundaries);

DivergenceReport restriction_divergence_scan(const CounterexampleSpec& spec, ScanMode mode, const ScanOptions& opts);

// Fixed constants of the embedding witnesses.
double bmo_bump_constant();                // mean over [-1,1] of |psi(x) - mean psi|
double weak_lp_bump_norm(double r);        // ||psi||_{L^{r,inf}} of the 1-D bump

DivergenceReport embedding_failure_scan(const CounterexampleSpec& spec, EmbeddingMode mode, const ScanOptions& opts);

struct MembershipReport {
    std::vector<double> samples;
    std::vector<std::vector<double>> weighted_witness;
    std::vector<double> sup_witness;
    std::vector<double> lq_partial; // at jmax
    double lq_bound = 0.0;          // analytic bound over all levels
    bool bounded = false;
    // Control with the unit weight on the same samples.
    std::vector<bool> control_divergent;
    // Relative growth of the slice grid seminorm as more levels are kept.
    std::vector<std::vector<double>> grid_growth;
};

MembershipReport weighted_membership_check(const CounterexampleSpec& spec, const AdmissibleFn& psi,
                                           const ScanOptions& opts);

struct EmbeddingBound {
    double lhs = 0.0;
    double rhs = 0.0;
    double factor = 0.0;
    bool holds = false;
};

// ||lambda||_{b^{Psi}_{p,r}} <= (sum (Psi/Phi)^chi)^{1/chi} ||lambda||_{b^{Phi}_{p,q}}, chi = qr/(q-r),
// over the levels of the sequence.
EmbeddingBound embedding_bound_check(const DyadicSequence& seq, double p, double q, double r, const AdmissibleFn& phi,
                                     const AdmissibleFn& psi);

const char* to_string(ScanMode m);
const char* to_string(EmbeddingMode m);

} // namespace besov
