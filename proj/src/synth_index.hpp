#pragma once

// Support-pruned lookup of quark coefficients, shared by pointwise and grid synthesis.

#include "besov/params.hpp"
#include "besov/quark.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace besov::detail {

struct MHash {
    std::size_t operator()(const std::vector<std::int64_t>& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : m) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

class SynthIndex {
public:
    SynthIndex(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params);

    double eval(std::span<const double> x) const;
    int max_level() const { return max_level_; }

private:
    struct Group {
        std::vector<int> beta;
        int nu;
        double scale;
        // Bounding box of the m with entries; nodes whose candidates miss it skip the group.
        std::vector<std::int64_t> lo, hi;
        std::unordered_map<std::vector<std::int64_t>, double, MHash> values;
    };
    std::vector<Group> groups_;
    BumpFn bump_;
    int dim_;
    int max_level_ = -1;
};

} // namespace besov::detail
