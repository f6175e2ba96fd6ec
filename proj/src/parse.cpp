#include "besov/parse.hpp"

#include "besov/error.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace besov {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double strict_strtod(const std::string& s, std::string_view original) {
    if (s.empty()) throw ParameterError("empty number");
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParameterError("malformed number '" + std::string(original) + "'");
    return v;
}

} // namespace

double parse_real(std::string_view text) {
    std::string s = trim(text);
    if (s == "inf" || s == "+inf" || s == "Inf" || s == "infinity")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        double num = strict_strtod(trim(s.substr(0, slash)), text);
        double den = strict_strtod(trim(s.substr(slash + 1)), text);
        if (den == 0.0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    double v = strict_strtod(s, text);
    if (std::isnan(v)) throw ParameterError("NaN is not a valid parameter");
    return v;
}

long long parse_int(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw ParameterError("empty integer");
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ParameterError("malformed integer '" + std::string(text) + "'");
    return v;
}

} // namespace besov
