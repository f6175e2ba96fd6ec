#pragma once

#include "besov/admissible.hpp"
#include "besov/coeffs.hpp"
#include "besov/grid.hpp"
#include "besov/params.hpp"
#include "besov/seqspace.hpp"

#include <cstdint>
#include <limits>
#include <span>

namespace besov {

// The tensor bump psi(x) = prod_i psi1(x_i), psi1(t) = psi0(t/2)/2, where psi0 is the
// normalized smooth bump built from exp(-1/t^2). supp psi = [-2,2]^N and the integer
// translates of psi sum to 1.
class BumpFn {
public:
    explicit BumpFn(int dim);

    int dim() const { return dim_; }

    static double profile(double t);
    static double line(double x);

    double operator()(std::span<const double> x) const;
    // y^beta psi(y).
    double monomial(std::span<const int> beta, std::span<const double> y) const;

    // Smallest r with supp psi inside the ball of radius 2^r.
    double r() const;
    double default_decay() const { return r() + 1.0; }
    // inf of psi over [0,1]^N.
    double inf_unit_cube() const;

private:
    int dim_;
};

BumpFn psi_bump(int N);

// 2^{-nu(s-N/p)} Psi(2^-nu)^{-1} (2^nu x - m)^beta psi(2^nu x - m); 2^{-nu s} scaling when p = inf.
double quark_eval(const BumpFn& bump, std::span<const int> beta, int nu, std::span<const std::int64_t> m, double s,
                  double p, const AdmissibleFn& psi_w, std::span<const double> x);

// Amplitude factor of a level-nu quark.
double quark_scale(int N, int nu, double s, double p, const AdmissibleFn& psi_w);

struct SynthesisResult {
    GridFunction grid;
    bool aliasing_warning = false;
};

SynthesisResult synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                           int level);

// Pointwise synthesis, pruned by support.
double synthesize_point(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params,
                        std::span<const double> x);

struct CounterexampleSpec {
    int N = 2;
    double s = 0.5;
    double p = 1.0;
    double q = std::numeric_limits<double>::infinity();
    AdmissibleFn psi = AdmissibleFn::constant(1.0);
    int M = 1;
    int C_M = 6;
    DyadicSequence sequence;
    int jmax = 0;

    int d() const { return N - 1; }

    // Validates s > sigma_p and p < q; M = floor(s) + 1, C_M = 2(M + 2).
    static CounterexampleSpec make(int N, double s, double p, double q, AdmissibleFn psi, DyadicSequence sequence);
    void validate() const;
    BesovParams params() const;
};

// beta = 0 coefficients at m = (C_M 2^j j, ..., C_M 2^j j, k) for levels <= level_cap
// (level_cap < 0 means the sequence's max level).
QuarkCoeffs counterexample_coeffs(const CounterexampleSpec& spec, int level_cap = -1);

// Lambda_j(x) = sum_k lambda_{j,k} 2^{j/p} psi1(2^j x - k).
double lambda_profile(const CounterexampleSpec& spec, const BumpFn& bump, double x_last, int j);

double coeff_norm(const QuarkCoeffs& coeffs, double p, double q, double rho);

} // namespace besov
