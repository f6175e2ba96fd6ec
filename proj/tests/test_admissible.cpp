#include <doctest.h>

#include "besov/admissible.hpp"
#include "besov/error.hpp"

#include <cmath>
#include <numbers>

using namespace besov;

TEST_CASE("closed-form families") {
    CHECK(AdmissibleFn::constant(1.0)(0.3) == 1.0);
    CHECK(AdmissibleFn::log_power(0.5, 1.0)(0.5) == doctest::Approx(2.0));
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    for (int j = 0; j <= 40; ++j) CHECK(psi(std::ldexp(1.0, -j)) == doctest::Approx(1.0 / (j + 2)));
    // log2 |log2(t/4)| at t = 1/4 is log2(4) = 2.
    CHECK(AdmissibleFn::log_log_power(0.25, 1.0)(0.25) == doctest::Approx(2.0));
}

TEST_CASE("evaluation domain and constructor guards") {
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    CHECK_THROWS_AS(psi(0.0), DomainError);
    CHECK_THROWS_AS(psi(1.5), DomainError);
    CHECK_THROWS_AS(AdmissibleFn::log_power(1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(AdmissibleFn::log_log_power(0.5, 1.0), ParameterError);
    CHECK_THROWS_AS(AdmissibleFn::constant(0.0), ParameterError);
    CHECK_THROWS_AS(AdmissibleFn::tabulated({1.0, 2.0, 1.5}), ParameterError);
}

TEST_CASE("monotone in the declared direction on a dyadic grid") {
    for (const AdmissibleFn& psi :
         {AdmissibleFn::log_power(0.25, -1.0), AdmissibleFn::log_power(0.5, 2.0), AdmissibleFn::log_log_power(0.25, 1.0),
          AdmissibleFn::log_log_power(0.1, -0.5), AdmissibleFn::tabulated({1.0, 1.5, 1.75, 2.0})}) {
        Direction dir = psi.direction();
        REQUIRE(dir != Direction::Constant);
        for (int j = 0; j < 3; ++j) {
            double a = psi(std::ldexp(1.0, -j)), b = psi(std::ldexp(1.0, -j - 1));
            // Decreasing in t means larger at the finer level.
            if (dir == Direction::Decreasing)
                CHECK(b >= a);
            else
                CHECK(b <= a);
        }
    }
}

TEST_CASE("admissibility ratio") {
    CHECK(admissibility_check(AdmissibleFn::constant(3.0), 64).max_ratio == 1.0);
    auto r1 = admissibility_check(AdmissibleFn::log_power(0.5, 1.0), 64);
    CHECK(r1.max_ratio <= 2.0);
    CHECK(r1.max_ratio > 1.9);
    CHECK(admissibility_check(AdmissibleFn::log_power(0.5, -3.0), 64).max_ratio <= 8.0);
}

TEST_CASE("c_infinity") {
    CHECK(c_infinity(AdmissibleFn::constant(2.0)) == 0.0);
    CHECK(c_infinity(AdmissibleFn::log_power(0.25, -1.0)) == doctest::Approx(1.0));
    CHECK(c_infinity(AdmissibleFn::log_power(0.5, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));
    auto psi = AdmissibleFn::log_power(0.3, -2.5);
    CHECK(c_infinity(psi.scaled(7.0)) == doctest::Approx(c_infinity(psi)));
}

TEST_CASE("weight series verdicts") {
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    SeriesReport two = weight_series(psi, 2.0, 1000000);
    CHECK(two.verdict == Verdict::Converges);
    // Terms (j+2)^-2 from j = 0; the tail beyond 10^6 is below 1e-6.
    double full = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    CHECK(std::abs(two.partial_sum - full) < 1e-5);
    CHECK(std::abs((two.partial_sum - 0.25) - 0.3949) < 1e-3);
    CHECK(weight_series(psi, 1.0, 1000).verdict == Verdict::Diverges);
    CHECK(weight_series(AdmissibleFn::constant(1.0), 3.0, 100).verdict == Verdict::Diverges);
    CHECK(weight_series(AdmissibleFn::log_log_power(0.25, -4.0), 3.0, 100).verdict == Verdict::Diverges);
    auto tab = weight_series(AdmissibleFn::tabulated({1.0, 0.5, 0.25, 0.125}), 1.0, 3);
    CHECK_FALSE(tab.analytic);
}

TEST_CASE("log-power verdict agrees with the doubling exponent") {
    // b chi < -1 exactly when chi > 1/c_inf with c_inf = -b.
    for (double b : {-0.5, -1.0, -2.0, -3.5})
        for (double chi : {0.2, 0.5, 0.9, 1.5, 2.5}) {
            auto psi = AdmissibleFn::log_power(0.25, b);
            bool conv = weight_series(psi, chi, 100).verdict == Verdict::Converges;
            CHECK(conv == (chi > 1.0 / c_infinity(psi)));
        }
}

TEST_CASE("config spelling round-trips") {
    for (const char* text : {"constant:2", "logpow:c=0.25,b=-1", "loglogpow:c=0.1,b=2", "logpow:c=0.5,b=1,scale=3"}) {
        AdmissibleFn psi = parse_admissible(text);
        AdmissibleFn again = parse_admissible(psi.describe());
        for (int j = 0; j < 20; ++j) CHECK(again.at_level(j) == doctest::Approx(psi.at_level(j)));
    }
    CHECK_THROWS_AS(parse_admissible("logpow:c=0.25"), ParameterError);
    CHECK_THROWS_AS(parse_admissible("bogus:1"), ParameterError);
}
