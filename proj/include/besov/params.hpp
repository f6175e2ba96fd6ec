#pragma once

#include "besov/admissible.hpp"

namespace besov {

// (N, d, s, p, q, M, Psi) with sigma_p = N (1/p - 1)_+.
struct BesovParams {
    int N = 1;
    int d = 1;
    double s = 1.0;
    double p = 1.0;
    double q = 1.0;
    int M = 1;
    AdmissibleFn psi = AdmissibleFn::constant(1.0);

    // M = 0 selects floor(s) + 1.
    static BesovParams make(int N, int d, double s, double p, double q,
                            AdmissibleFn psi = AdmissibleFn::constant(1.0), int M = 0);

    double sigma_p() const;
    void validate() const;
};

int default_order(double s);

} // namespace besov
