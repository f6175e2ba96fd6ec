#pragma once

#include "besov/grid.hpp"
#include "besov/kernels.hpp"
#include "besov/params.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace besov {

// Delta^M_h f on the nodes x with x + i h in the box for 0 <= i <= M; nullopt when that
// set is empty. The result lives on the shrunken box.
std::optional<GridFunction> iterated_difference(const GridFunction& f, std::span<const std::int64_t> steps, int M);
// h given in coordinates; must be a multiple of the spacing (AlignmentError otherwise).
std::optional<GridFunction> iterated_difference_at(const GridFunction& f, std::span<const double> h, int M);

// Trapezoid-weighted L^p norm; max modulus when p = inf.
double lp_norm_grid(const GridFunction& f, double p);

struct ShellEntry {
    int j = 0;
    // 2^{js} Psi(2^-j) sup_{h in K_j} ||Delta^M_h f||_p.
    double value = 0.0;
    // The raw sup_{h in K_j} ||Delta^M_h f||_p.
    double modulus = 0.0;
};

struct NormReport {
    double lp = 0.0;
    std::vector<ShellEntry> shells;
    double seminorm = 0.0;
    double total = 0.0;
    std::vector<std::string> flags;
};

enum class KernelChoice { Serial, Parallel };

struct ShellOptions {
    bool diagonal = true;
    // Replace each shell modulus by the running max over shells >= j (the sup in t of
    // the generalized norm).
    bool cumulative = false;
    KernelChoice kernel = KernelChoice::Parallel;
};

// Shifts h with 2^-(j+1) <= |h| <= 2^-j on a level-J grid: every axis-parallel magnitude
// in the positive direction, plus e_i +- e_l diagonals when dim >= 2.
std::vector<kernels::Shift> shell_shifts(int dim, int grid_level, int j, bool diagonal);

NormReport besov_seminorm(const GridFunction& f, const BesovParams& params, int j_lo, int j_hi,
                          const ShellOptions& opts = {});

// B^alpha_{inf,inf}: shells with p = q = inf, plus the sup norm.
NormReport holder_norm(const GridFunction& f, double alpha, int M, int j_lo, int j_hi);

// max of the mean oscillation over cubes of side 2^-k, coarse <= k <= floor, whose corners
// lie on the 2^-(k+1) lattice and which fit inside the box. The half-step offsets let a
// window straddle a dyadic point. coarse defaults to the coarsest level that fits.
double bmo_norm(const GridFunction& f, int floor_level, std::optional<int> coarse_level = std::nullopt);

struct Plateau {
    double t_end = 0.0;
    double value = 0.0;
};

std::vector<Plateau> decreasing_rearrangement(const GridFunction& f);
std::vector<Plateau> decreasing_rearrangement(std::span<const double> values, std::span<const double> measures);

double weak_lp_norm(std::span<const Plateau> plateaus, double r);
double weak_lp_norm(const GridFunction& f, double r);

// L^p norm recomputed from the plateaus of f*.
double lp_from_rearrangement(std::span<const Plateau> plateaus, double p);

} // namespace besov
