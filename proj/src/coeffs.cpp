#include "besov/coeffs.hpp"

#include "besov/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace besov {

int QuarkIndex::beta_order() const {
    return std::accumulate(beta.begin(), beta.end(), 0);
}

QuarkCoeffs::QuarkCoeffs(int dim, double decay) : dim_(dim), decay_(decay) {
    if (dim < 1) throw ParameterError("coefficient dimension must be >= 1");
    if (decay < 0.0) throw ParameterError("decay must be nonnegative");
}

void QuarkCoeffs::check(const QuarkIndex& idx) const {
    if (static_cast<int>(idx.beta.size()) != dim_ || static_cast<int>(idx.m.size()) != dim_)
        throw ParameterError("quark index has wrong dimension (expected " + std::to_string(dim_) + ")");
    if (idx.nu < 0) throw ParameterError("quark level must be >= 0");
    if (std::any_of(idx.beta.begin(), idx.beta.end(), [](int b) { return b < 0; }))
        throw ParameterError("multi-index entries must be >= 0");
}

void QuarkCoeffs::add(const QuarkIndex& idx, double value) {
    check(idx);
    entries_[idx] += value;
}

void QuarkCoeffs::set(const QuarkIndex& idx, double value) {
    check(idx);
    entries_[idx] = value;
}

double QuarkCoeffs::at(const QuarkIndex& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? 0.0 : it->second;
}

int QuarkCoeffs::max_level() const {
    int top = -1;
    for (const auto& [idx, v] : entries_) top = std::max(top, idx.nu);
    return top;
}

} // namespace besov
