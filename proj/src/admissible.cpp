#include "besov/admissible.hpp"

#include "besov/error.hpp"
#include "besov/parse.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <sstream>
#include <string>

namespace besov {

AdmissibleFn AdmissibleFn::constant(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("constant weight must be positive and finite");
    AdmissibleFn f;
    f.family_ = Family::Constant;
    f.scale_ = a;
    return f;
}

AdmissibleFn AdmissibleFn::log_power(double c, double b) {
    if (!(c > 0.0 && c < 1.0)) throw ParameterError("logpow requires 0 < c < 1");
    if (!std::isfinite(b)) throw ParameterError("logpow exponent must be finite");
    AdmissibleFn f;
    f.family_ = Family::LogPower;
    f.c_ = c;
    f.b_ = b;
    f.u0_ = -std::log2(c);
    return f;
}

AdmissibleFn AdmissibleFn::log_log_power(double c, double b) {
    // log2|log2(ct)| must stay positive on (0,1], i.e. -log2(c) > 1.
    if (!(c > 0.0 && c < 0.5)) throw ParameterError("loglogpow requires 0 < c < 1/2");
    if (!std::isfinite(b)) throw ParameterError("loglogpow exponent must be finite");
    AdmissibleFn f;
    f.family_ = Family::LogLogPower;
    f.c_ = c;
    f.b_ = b;
    f.u0_ = -std::log2(c);
    return f;
}

AdmissibleFn AdmissibleFn::tabulated(std::vector<double> values) {
    if (values.size() < 2) throw ParameterError("tabulated weight needs at least two levels");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("tabulated weight must be positive and finite");
    bool up = true, down = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        up = up && values[i] >= values[i - 1];
        down = down && values[i] <= values[i - 1];
    }
    if (!up && !down) throw ParameterError("tabulated weight is not monotone");
    AdmissibleFn f;
    f.family_ = Family::Tabulated;
    f.table_ = std::move(values);
    return f;
}

double AdmissibleFn::at_level(double u) const {
    if (!(u >= 0.0)) throw DomainError("weight level must be >= 0");
    switch (family_) {
    case Family::Constant:
        return scale_;
    case Family::LogPower:
        return scale_ * std::pow(u0_ + u, b_);
    case Family::LogLogPower:
        return scale_ * std::pow(std::log2(u0_ + u), b_);
    case Family::Tabulated: {
        double top = static_cast<double>(table_.size() - 1);
        if (u > top) throw DomainError("level beyond tabulated range");
        auto i = static_cast<std::size_t>(std::floor(u));
        if (i >= table_.size() - 1) return scale_ * table_.back();
        double w = u - static_cast<double>(i);
        return scale_ * std::exp((1.0 - w) * std::log(table_[i]) + w * std::log(table_[i + 1]));
    }
    }
    return scale_;
}

double AdmissibleFn::operator()(double t) const {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("weight argument must lie in (0,1]");
    return at_level(-std::log2(t));
}

Direction AdmissibleFn::direction() const {
    switch (family_) {
    case Family::Constant:
        return Direction::Constant;
    case Family::LogPower:
    case Family::LogLogPower:
        // Both grow with u = -log2 t when b > 0, i.e. decrease in t.
        if (b_ == 0.0) return Direction::Constant;
        return b_ > 0.0 ? Direction::Decreasing : Direction::Increasing;
    case Family::Tabulated:
        if (table_.front() == table_.back()) return Direction::Constant;
        return table_.back() > table_.front() ? Direction::Decreasing : Direction::Increasing;
    }
    return Direction::Constant;
}

bool AdmissibleFn::is_unit() const {
    if (family_ == Family::Constant) return scale_ == 1.0;
    if (family_ == Family::LogPower || family_ == Family::LogLogPower) return b_ == 0.0 && scale_ == 1.0;
    return false;
}

AdmissibleFn AdmissibleFn::scaled(double a) const {
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("scale must be positive and finite");
    AdmissibleFn f = *this;
    f.scale_ *= a;
    return f;
}

std::string AdmissibleFn::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
    case Family::Constant:
        os << "constant:" << scale_;
        return os.str();
    case Family::LogPower:
        os << "logpow:c=" << c_ << ",b=" << b_;
        break;
    case Family::LogLogPower:
        os << "loglogpow:c=" << c_ << ",b=" << b_;
        break;
    case Family::Tabulated:
        os << "table:";
        for (std::size_t i = 0; i < table_.size(); ++i) os << (i ? "," : "") << table_[i];
        break;
    }
    if (scale_ != 1.0) os << ",scale=" << scale_;
    return os.str();
}

AdmissibleFn parse_admissible(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (kind == "constant") return AdmissibleFn::constant(rest.empty() ? 1.0 : parse_real(rest));
    if (kind == "table") {
        std::vector<double> vals;
        std::stringstream ss(rest);
        for (std::string item; std::getline(ss, item, ',');) vals.push_back(parse_real(item));
        return AdmissibleFn::tabulated(std::move(vals));
    }
    if (kind != "logpow" && kind != "loglogpow") throw ParameterError("unknown weight family '" + kind + "'");
    double c = -1.0, b = 0.0, scale = 1.0;
    bool have_c = false, have_b = false;
    std::stringstream ss(rest);
    for (std::string item; std::getline(ss, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParameterError("weight option '" + item + "' lacks '='");
        std::string key = item.substr(0, eq);
        double v = parse_real(item.substr(eq + 1));
        if (key == "c") {
            c = v;
            have_c = true;
        } else if (key == "b") {
            b = v;
            have_b = true;
        } else if (key == "scale") {
            scale = v;
        } else {
            throw ParameterError("unknown weight option '" + key + "'");
        }
    }
    if (!have_c || !have_b) throw ParameterError("weight '" + kind + "' needs both c and b");
    AdmissibleFn f = kind == "logpow" ? AdmissibleFn::log_power(c, b) : AdmissibleFn::log_log_power(c, b);
    return scale == 1.0 ? f : f.scaled(scale);
}

AdmissibilityReport admissibility_check(const AdmissibleFn& psi, int jmax) {
    if (jmax < 1) throw ParameterError("admissibility check needs jmax >= 1");
    AdmissibilityReport rep;
    for (int j = 0; j <= jmax; ++j) {
        double r = psi.at_level(j) / psi.at_level(2.0 * j);
        rep.max_ratio = std::max({rep.max_ratio, r, 1.0 / r});
    }
    Direction dir = psi.direction();
    double prev = psi.at_level(0);
    for (int j = 1; j <= 2 * jmax; ++j) {
        double cur = psi.at_level(j);
        // t = 2^-j decreases with j.
        bool ok = dir == Direction::Constant     ? cur == prev
                  : dir == Direction::Increasing ? cur <= prev
                                                 : cur >= prev;
        rep.monotone = rep.monotone && ok;
        prev = cur;
    }
    return rep;
}

double c_infinity(const AdmissibleFn& psi, int grid_size) {
    if (grid_size < 2) throw ParameterError("c_infinity grid needs at least 2 points");
    double umax = 64.0;
    if (psi.family() == Family::Tabulated) umax = static_cast<double>(psi.table().size() - 1) / 2.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
        double u = umax * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        best = std::max(best, std::log2(psi.at_level(u) / psi.at_level(2.0 * u)));
    }
    switch (psi.family()) {
    case Family::Constant:
        best = std::max(best, 0.0);
        break;
    case Family::LogPower:
        best = std::max(best, -psi.b());
        break;
    case Family::LogLogPower:
        best = std::max(best, 0.0);
        break;
    case Family::Tabulated:
        break;
    }
    return best;
}

SeriesReport weight_series(const AdmissibleFn& psi, double chi, long jmax) {
    if (!(chi > 0.0) || !std::isfinite(chi)) throw ParameterError("series exponent chi must be positive and finite");
    if (jmax < 0) throw ParameterError("series truncation must be >= 0");
    SeriesReport rep;
    long top = jmax;
    if (psi.family() == Family::Tabulated) top = std::min<long>(jmax, static_cast<long>(psi.table().size()) - 1);
    double sum = 0.0;
    for (long j = 0; j <= top; ++j) sum += std::pow(psi.at_level(static_cast<double>(j)), chi);
    rep.partial_sum = sum;
    switch (psi.family()) {
    case Family::Constant:
    case Family::LogLogPower:
        rep.verdict = Verdict::Diverges;
        break;
    case Family::LogPower:
        rep.verdict = psi.b() * chi < -1.0 ? Verdict::Converges : Verdict::Diverges;
        break;
    case Family::Tabulated: {
        // Power-law exponent of the terms over the upper half of the table.
        rep.analytic = false;
        const auto& t = psi.table();
        std::size_t j2 = t.size() - 1;
        std::size_t j1 = j2 / 2;
        if (j1 == 0) j1 = 1;
        double slope = chi * (std::log(t[j2]) - std::log(t[j1])) /
                       (std::log(static_cast<double>(j2 + 1)) - std::log(static_cast<double>(j1 + 1)));
        rep.verdict = slope < -1.0 ? Verdict::Converges : Verdict::Diverges;
        break;
    }
    }
    return rep;
}

const char* to_string(Verdict v) { return v == Verdict::Converges ? "converges" : "diverges"; }

} // namespace besov
