#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace besov {

enum class Family { Constant, LogPower, LogLogPower, Tabulated };

// Monotonicity of Psi as a function of t on (0,1].
enum class Direction { Constant, Increasing, Decreasing };

// A weight Psi on (0,1]. All evaluation goes through the level variable
// u = -log2(t), so Psi(2^-j) is at_level(j).
class AdmissibleFn {
public:
    AdmissibleFn() = default;

    static AdmissibleFn constant(double a);
    // |log2(c t)|^b, 0 < c < 1.
    static AdmissibleFn log_power(double c, double b);
    // (log2|log2(c t)|)^b, 0 < c < 1/2.
    static AdmissibleFn log_log_power(double c, double b);
    // Psi(2^-j) = values[j]; log-linear in between. Must be positive and monotone.
    static AdmissibleFn tabulated(std::vector<double> values);

    Family family() const { return family_; }
    double c() const { return c_; }
    double b() const { return b_; }
    double scale() const { return scale_; }
    const std::vector<double>& table() const { return table_; }

    double operator()(double t) const;
    double at_level(double u) const;
    Direction direction() const;
    bool is_unit() const;

    // Returns a copy multiplied by a > 0.
    AdmissibleFn scaled(double a) const;

    // Config-file spelling, e.g. "logpow:c=0.25,b=-1".
    std::string describe() const;

private:
    Family family_ = Family::Constant;
    double c_ = 0.5;
    double b_ = 0.0;
    double scale_ = 1.0;
    double u0_ = 0.0;
    std::vector<double> table_;
};

AdmissibleFn parse_admissible(std::string_view text);

struct AdmissibilityReport {
    double max_ratio = 1.0;
    bool monotone = true;
};

AdmissibilityReport admissibility_check(const AdmissibleFn& psi, int jmax);

// sup over (0,1] of log2(Psi(t)/Psi(t^2)) on a logarithmic grid down to 2^-64,
// combined with the closed-form t -> 0 limit of the built-in families.
double c_infinity(const AdmissibleFn& psi, int grid_size = 4096);

enum class Verdict { Converges, Diverges };

struct SeriesReport {
    double partial_sum = 0.0;
    Verdict verdict = Verdict::Diverges;
    bool analytic = true;
};

// Partial sum of Psi(2^-j)^chi over 0 <= j <= jmax plus a convergence verdict.
SeriesReport weight_series(const AdmissibleFn& psi, double chi, long jmax);

const char* to_string(Verdict v);

} // namespace besov
