#include "besov/sampling.hpp"

#include "besov/error.hpp"

#include <cmath>

namespace besov {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> draw_nondyadic(std::uint64_t seed, int n, double lo, double hi, int level) {
    if (n < 0) throw ParameterError("sample count must be >= 0");
    if (!(hi > lo)) throw ParameterError("sampling interval must be nonempty");
    if (level < 0 || level > 48) throw ParameterError("non-dyadic sampling level must lie in [0, 48]");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(out.size()) < n) {
        double x = lo + (hi - lo) * uniform01(rng);
        if (x >= hi) continue;
        double y = std::ldexp(x, level);
        if (y == std::floor(y)) continue;
        out.push_back(x);
    }
    return out;
}

} // namespace besov
