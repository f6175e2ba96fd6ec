#include <doctest.h>

#include "besov/error.hpp"
#include "besov/parse.hpp"

#include <cmath>

using namespace besov;

TEST_CASE("parse_real accepts decimals, fractions, hex and inf") {
    CHECK(parse_real("0.5") == 0.5);
    CHECK(parse_real(" 2 ") == 2.0);
    CHECK(parse_real("1/2") == 0.5);
    CHECK(parse_real("-3/4") == -0.75);
    CHECK(parse_real("0x1p-3") == 0.125);
    CHECK(std::isinf(parse_real("inf")));
    CHECK(parse_real("1e-3") == doctest::Approx(1e-3));
}

TEST_CASE("parse_real rejects garbage") {
    CHECK_THROWS_AS(parse_real(""), ParameterError);
    CHECK_THROWS_AS(parse_real("nan"), ParameterError);
    CHECK_THROWS_AS(parse_real("1/0"), ParameterError);
    CHECK_THROWS_AS(parse_real("0.5x"), ParameterError);
    CHECK_THROWS_AS(parse_real("1/2/3"), ParameterError);
}

TEST_CASE("parse_int is strict") {
    CHECK(parse_int("34") == 34);
    CHECK(parse_int("-2") == -2);
    CHECK_THROWS_AS(parse_int("3.0"), ParameterError);
    CHECK_THROWS_AS(parse_int("12abc"), ParameterError);
    CHECK_THROWS_AS(parse_int(""), ParameterError);
}
