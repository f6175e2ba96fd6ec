#pragma once

#include <string_view>

namespace besov {

// Parses a real written as a decimal, hex-float, simple fraction ("1/2") or
// "inf". Throws ParameterError on malformed input.
double parse_real(std::string_view text);

// Parses a base-10 integer, rejecting trailing garbage.
long long parse_int(std::string_view text);

} // namespace besov
