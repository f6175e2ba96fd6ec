#include "besov/params.hpp"

#include "besov/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace besov {

int default_order(double s) { return static_cast<int>(std::floor(s)) + 1; }

BesovParams BesovParams::make(int N, int d, double s, double p, double q, AdmissibleFn psi, int M) {
    BesovParams bp;
    bp.N = N;
    bp.d = d;
    bp.s = s;
    bp.p = p;
    bp.q = q;
    bp.psi = std::move(psi);
    bp.M = M == 0 ? default_order(s) : M;
    bp.validate();
    return bp;
}

double BesovParams::sigma_p() const {
    if (std::isinf(p)) return 0.0;
    return N * std::max(1.0 / p - 1.0, 0.0);
}

void BesovParams::validate() const {
    if (N < 1) throw ParameterError("N must be >= 1");
    if (d < 1 || d > N) throw ParameterError("d must lie in [1, N]");
    if (!(p > 0.0)) throw ParameterError("p must be positive or inf");
    if (!(q > 0.0)) throw ParameterError("q must be positive or inf");
    if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("s must be positive and finite");
    if (!(s > sigma_p()))
        throw ParameterError("s = " + std::to_string(s) + " must exceed sigma_p = " + std::to_string(sigma_p()));
    if (M < 1 || !(s < M)) throw ParameterError("difference order M must exceed s");
}

} // namespace besov
