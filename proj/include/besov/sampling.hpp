#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace besov {

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& rng);

// n points uniform in [lo,hi) with x 2^level never an integer, so no sample sits on a
// dyadic breakpoint of the first `level` levels. Redraws on collision.
std::vector<double> draw_nondyadic(std::uint64_t seed, int n, double lo, double hi, int level);

} // namespace besov
