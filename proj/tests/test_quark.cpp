#include <doctest.h>

#include "besov/error.hpp"
#include "besov/quark.hpp"
#include "besov/restrict.hpp"
#include "besov/sampling.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace besov;

namespace {

// Direct evaluation of the normalized bump, no log-space guarding.
double v_direct(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / ((1 + t) * (1 + t)) - 1.0 / ((1 - t) * (1 - t)));
}

double psi0_direct(double t) {
    double v = v_direct(t);
    if (v == 0.0) return 0.0;
    return v / (v_direct(t - 1.0) + v + v_direct(t + 1.0));
}

CounterexampleSpec default_spec(int jmax = 34) {
    return CounterexampleSpec::make(2, 0.5, 1.0, INFINITY, AdmissibleFn::constant(1.0),
                                    construct_lambda(1.0, INFINITY, jmax));
}

} // namespace

TEST_CASE("bump values") {
    CHECK(BumpFn::line(0.0) == doctest::Approx(0.5));
    CHECK(BumpFn::line(1.0) == doctest::Approx(0.25));
    CHECK(BumpFn::line(-1.0) == doctest::Approx(0.25));
    for (int N = 1; N <= 3; ++N) {
        BumpFn psi(N);
        std::vector<double> zero(N, 0.0);
        CHECK(psi(zero) == doctest::Approx(std::ldexp(1.0, -N)));
        CHECK(psi.inf_unit_cube() == doctest::Approx(std::pow(0.25, N)));
        CHECK(psi.r() == doctest::Approx(1.0 + 0.5 * std::log2(N)));
    }
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
        double t = 2.0 * uniform01(rng) - 1.0;
        CHECK(BumpFn::profile(t) == doctest::Approx(psi0_direct(t)).epsilon(1e-12));
    }
}

TEST_CASE("partition of unity and support") {
    std::mt19937_64 rng(4);
    for (int N = 1; N <= 3; ++N) {
        BumpFn psi(N);
        std::vector<double> x(N), y(N);
        for (int t = 0; t < 2000; ++t) {
            for (auto& c : x) c = 6.0 * uniform01(rng) - 3.0;
            double sum = 0.0;
            std::vector<int> m(N, -5);
            while (true) {
                for (int a = 0; a < N; ++a) y[a] = x[a] - m[a];
                sum += psi(y);
                int a = N - 1;
                while (a >= 0 && m[a] == 5) m[a--] = -5;
                if (a < 0) break;
                ++m[a];
            }
            CHECK(std::abs(sum - 1.0) <= 1e-10);
        }
    }
    BumpFn psi2(2);
    std::vector<double> edge{2.0, 0.3}, inside{1.9, 0.3}, far{-0.1, -2.5};
    CHECK(psi2(edge) == 0.0);
    CHECK(psi2(far) == 0.0);
    CHECK(psi2(inside) > 0.0);
}

TEST_CASE("quark evaluation") {
    BumpFn psi(1);
    auto unit = AdmissibleFn::constant(1.0);
    std::vector<int> b0{0}, b1{1};
    std::vector<std::int64_t> m0{0};
    for (double x : {-1.7, -0.3, 0.0, 0.4, 1.2}) {
        std::vector<double> xs{x};
        CHECK(quark_eval(psi, b0, 0, m0, 0.5, 1.0, unit, xs) == doctest::Approx(BumpFn::line(x)));
        // 2^{-2(1/2 - 1)} psi(4x) = 2 psi(4x).
        CHECK(quark_eval(psi, b0, 2, m0, 0.5, 1.0, unit, xs) == doctest::Approx(2.0 * BumpFn::line(4.0 * x)));
        CHECK(quark_eval(psi, b1, 0, m0, 0.5, 1.0, unit, xs) == doctest::Approx(x * BumpFn::line(x)));
    }
}

TEST_CASE("synthesis") {
    BumpFn psi(1);
    auto params = BesovParams::make(1, 1, 0.5, 1.0, 1.0);
    QuarkCoeffs one(1);
    one.add({{0}, 0, {0}}, 1.0);
    auto g = synthesize(one, psi, params, Box::cube(1, -3.0, 3.0), 6).grid;
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(BumpFn::line(g.coord(0, i))));

    // Unit coefficients on every integer touching [-2,2] give 1 on [-1,1].
    QuarkCoeffs all(1);
    for (int m = -4; m <= 4; ++m) all.add({{0}, 0, {m}}, 1.0);
    auto h = synthesize(all, psi, params, Box::cube(1, -1.0, 1.0), 6).grid;
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == doctest::Approx(1.0));

    // Pointwise and grid paths agree.
    QuarkCoeffs mix(1);
    mix.add({{0}, 2, {3}}, 0.7);
    mix.add({{1}, 1, {-1}}, -1.3);
    mix.add({{0}, 0, {1}}, 0.4);
    auto k = synthesize(mix, psi, params, Box::cube(1, -2.0, 3.0), 7).grid;
    for (std::size_t i = 0; i < k.size(); i += 3) {
        std::vector<double> x{k.coord(0, i)};
        CHECK(k[i] == doctest::Approx(synthesize_point(mix, psi, params, x)).epsilon(1e-12));
    }
}

TEST_CASE("aliasing warning when the grid is coarser than the finest quark") {
    BumpFn psi(1);
    auto params = BesovParams::make(1, 1, 0.5, 1.0, 1.0);
    QuarkCoeffs c(1);
    c.add({{0}, 8, {300}}, 1.0);
    CHECK(synthesize(c, psi, params, Box::cube(1, 0.0, 2.0), 4).aliasing_warning);
    CHECK_FALSE(synthesize(c, psi, params, Box::cube(1, 0.0, 2.0), 10).aliasing_warning);
}

TEST_CASE("coefficient norm") {
    QuarkCoeffs a(2);
    a.add({{0, 0}, 0, {0, 0}}, 1.0);
    for (double rho : {0.5, 2.0, 5.0}) CHECK(coeff_norm(a, 1.0, 1.0, rho) == doctest::Approx(1.0));
    QuarkCoeffs b(2);
    b.add({{1, 1}, 0, {0, 0}}, 1.0);
    CHECK(coeff_norm(b, 1.0, 1.0, 1.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(coeff_norm(b, 1.0, 1.0, 0.0), ParameterError);
}

TEST_CASE("counterexample coefficients") {
    auto spec = default_spec();
    CHECK(spec.M == 1);
    CHECK(spec.C_M == 6);
    auto c = counterexample_coeffs(spec, 4);
    CHECK(c.at({{0, 0}, 1, {12, 2}}) == doctest::Approx(0.5));
    CHECK(c.at({{0, 0}, 1, {12, 3}}) == doctest::Approx(0.5));
    CHECK(c.at({{0, 0}, 1, {12, 4}}) == 0.0);
    CHECK(c.at({{0, 0}, 3, {6 * 8 * 3, 12}}) == doctest::Approx(3.0 / 8.0));
    // Blocks sit at x_1 = C_M j with radius 2^{1-j} <= 2 < C_M / 2: pairwise disjoint.
    for (int j = 1; j < 34; ++j) CHECK(spec.C_M * j + 2.0 < spec.C_M * (j + 1) - 2.0);
    auto full = counterexample_coeffs(spec, 20);
    CHECK(coeff_norm(full, 1.0, INFINITY, BumpFn(2).default_decay()) <= 1.0 + 1e-12);
    CHECK_THROWS_AS(CounterexampleSpec::make(2, 0.5, 2.0, 1.0, AdmissibleFn::constant(1.0), construct_zeta(5)),
                    ParameterError);
}

TEST_CASE("level profiles") {
    auto spec = default_spec();
    BumpFn psi(2);
    CHECK(lambda_profile(spec, psi, 1.0, 1) == doctest::Approx(0.75));
    for (double x : draw_nondyadic(8, 100, 1.0, 2.0, 34)) {
        CHECK(lambda_profile(spec, psi, x, 0) == 0.0);
        for (int j = 1; j <= 20; ++j) {
            double lam = spec.sequence.at_point(j, x);
            CHECK(lambda_profile(spec, psi, x, j) >= 0.25 * lam * std::exp2(j) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("slice of the synthesized counterexample matches the level sum") {
    auto spec = default_spec(10);
    BumpFn psi(2);
    auto coeffs = counterexample_coeffs(spec, 6);
    auto params = spec.params();
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        double x2 = 0.9 + 1.2 * uniform01(rng);
        double x1 = -2.0 + 42.0 * uniform01(rng);
        std::vector<double> pt{x1, x2};
        std::vector<double> xp{x1};
        CHECK(std::abs(synthesize_point(coeffs, psi, params, pt) - slice_point(spec, psi, xp, x2, 6)) <= 1e-10);
    }
    std::vector<double> xp{6.0};
    CHECK(slice_point(spec, psi, xp, 1.0) == doctest::Approx(3.0 * std::sqrt(2.0) / 8.0));
}
