#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace besov {

struct QuarkIndex {
    std::vector<int> beta;
    int nu = 0;
    std::vector<std::int64_t> m;

    int beta_order() const;
    auto operator<=>(const QuarkIndex&) const = default;
};

// Finite sparse family lambda^beta_{nu,m}.
class QuarkCoeffs {
public:
    explicit QuarkCoeffs(int dim, double decay = 0.0);

    int dim() const { return dim_; }
    double decay() const { return decay_; }
    void set_decay(double rho) { decay_ = rho; }

    // Adds value to the entry (accumulating).
    void add(const QuarkIndex& idx, double value);
    void set(const QuarkIndex& idx, double value);
    double at(const QuarkIndex& idx) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<QuarkIndex, double>& entries() const { return entries_; }
    int max_level() const;

private:
    void check(const QuarkIndex& idx) const;

    int dim_;
    double decay_;
    std::map<QuarkIndex, double> entries_;
};

} // namespace besov
