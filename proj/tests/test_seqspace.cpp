#include <doctest.h>

#include "besov/error.hpp"
#include "besov/restrict.hpp"
#include "besov/sampling.hpp"
#include "besov/seqspace.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace besov;

namespace {

// Sweep oracle written against x-coordinates in [1,2]: a cursor in units of 2^-62
// walks right; a run that would cross x = 2 is pushed flush against it, and the next
// run after reaching x = 2 starts again from x = 1.
struct OracleRun {
    int level;
    std::uint64_t start, length;
};

std::vector<OracleRun> oracle_sweep(const std::vector<std::uint64_t>& lengths) {
    const int unit = 62;
    const std::uint64_t one = std::uint64_t{1} << unit;
    std::vector<OracleRun> out;
    std::uint64_t cursor = one;
    bool first = true;
    for (int j = 0; j < static_cast<int>(lengths.size()); ++j) {
        std::uint64_t L = lengths[j];
        if (L == 0) continue;
        if (cursor == 2 * one || first) cursor = one;
        first = false;
        std::uint64_t cell = std::uint64_t{1} << (unit - j);
        std::uint64_t left = cursor, right = cursor + L * cell;
        if (right > 2 * one) {
            right = 2 * one;
            left = right - L * cell;
        }
        out.push_back({j, left / cell, L});
        cursor = right;
    }
    return out;
}

std::vector<double> random_nonincreasing(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double cur = 1.0 + uniform01(rng);
    for (auto& x : v) {
        double u = uniform01(rng);
        // Flat stretches (u < 0.3), slow decay, and occasional sharp drops.
        if (u >= 0.98)
            cur *= 0.1 * uniform01(rng);
        else if (u >= 0.3)
            cur *= 0.9 + 0.1 * uniform01(rng);
        x = cur;
    }
    return v;
}

} // namespace

TEST_CASE("bpq norm basics") {
    CHECK(bpq_norm(DyadicSequence(5), 1.0, 1.0).total == 0.0);
    auto one = DyadicSequence::from_runs({LevelRun{0, 1, 1, 1.0}}, 3);
    for (double p : {0.5, 1.0, 2.0, HUGE_VAL})
        for (double q : {0.5, 1.0, HUGE_VAL}) CHECK(bpq_norm(one, p, q).total == doctest::Approx(1.0));
    // Level 1: two entries of 3; level 2: one entry of 5.
    auto two = DyadicSequence::from_runs({LevelRun{1, 2, 2, 3.0}, LevelRun{2, 5, 1, 5.0}}, 2);
    CHECK(bpq_norm(two, 2.0, 2.0).total == doctest::Approx(std::sqrt(43.0)));
    CHECK(bpq_norm(two, 1.0, INFINITY).total == doctest::Approx(6.0));
}

TEST_CASE("runs are validated") {
    CHECK_THROWS_AS(DyadicSequence::from_runs({LevelRun{2, 3, 1, 1.0}}, 3), ParameterError);
    CHECK_THROWS_AS(DyadicSequence::from_runs({LevelRun{2, 7, 2, 1.0}}, 3), ParameterError);
    CHECK_THROWS_AS(DyadicSequence::from_runs({LevelRun{1, 2, 1, -1.0}}, 3), ParameterError);
    CHECK_THROWS_AS(DyadicSequence::from_runs({LevelRun{1, 2, 1, 1.0}, LevelRun{1, 3, 1, 1.0}}, 3), ParameterError);
}

TEST_CASE("condensation examples") {
    std::vector<double> geo(std::size_t{1} << 21);
    for (std::size_t i = 0; i < geo.size(); ++i) geo[i] = std::ldexp(1.0, -static_cast<int>(i + 1));
    CondensationResult r = condensation_check(geo, 20);
    double condensed = 0.0;
    for (int j = 0; j <= 20; ++j) condensed += std::ldexp(1.0, j - (1 << j));
    CHECK(r.lower == doctest::Approx(1.0));
    CHECK(r.condensed == doctest::Approx(condensed));
    CHECK(r.condensed == doctest::Approx(1.2815).epsilon(1e-4));
    CHECK(r.upper == doctest::Approx(2.0));
    CHECK(r.holds);

    std::vector<double> inv(4096);
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / ((i + 1.0) * (i + 1.0));
    CondensationResult s = condensation_check(inv, 11);
    double half = 0.0;
    for (int j = 0; j <= 11; ++j) half += std::ldexp(1.0, -j);
    CHECK(s.condensed == doctest::Approx(half));
    CHECK(s.holds);
}

TEST_CASE("non-monotone counterexample to condensation") {
    // lambda_i = 1/k^2 at i = 2^k (k >= 1), 2^-i elsewhere.
    std::vector<double> lam((std::size_t{1} << 21) - 1);
    for (std::size_t i = 1; i <= lam.size(); ++i) {
        bool pow2 = (i & (i - 1)) == 0 && i > 1;
        double k = std::log2(static_cast<double>(i));
        lam[i - 1] = pow2 ? 1.0 / (k * k) : std::ldexp(1.0, -static_cast<int>(i));
    }
    CHECK_THROWS_AS(condensation_check(lam, 20), MonotonicityError);
    CondensationResult r = condensation_check(lam, 20, false);
    CHECK(r.condensed > r.upper);
    CHECK_FALSE(r.holds);
}

TEST_CASE("condensation and pointwise bounds on random nonincreasing lists") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 5000);
        auto lam = random_nonincreasing(rng, n);
        CondensationResult c = condensation_check(lam, 20);
        CHECK(c.holds);
        for (int k = 0; k < 5; ++k) {
            double x = std::exp2(8.0 * uniform01(rng) - 4.0);
            CHECK(dyadic_point_check(lam, x, 40).holds);
        }
    }
}

TEST_CASE("phi bound closed form") {
    CHECK(phi_bound(1.0) == 4.0);
    CHECK(phi_bound(8.0) == 0.5);
    CHECK(phi_bound(0.25) == doctest::Approx(16.0 * 3.0));
    CHECK_THROWS_AS(phi_bound(0.0), DomainError);
}

TEST_CASE("amalgam identity") {
    std::mt19937_64 rng(5);
    for (double p : {0.5, 1.0, 2.0})
        for (int t = 0; t < 40; ++t) {
            std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 3000);
            std::vector<double> lam(n);
            for (auto& v : lam) v = uniform01(rng) < 0.2 ? 0.0 : 4.0 * uniform01(rng) - 2.0;
            lam[0] = 1.0;
            AmalgamResult r = amalgam_integral(lam, p);
            CHECK(std::abs(r.lhs - r.rhs) <= 1e-10 * r.lhs);
        }
}

TEST_CASE("zeta construction against the sweep oracle") {
    const int J = 40;
    DyadicSequence z = construct_zeta(J);
    std::vector<std::uint64_t> lengths(J + 1, 0);
    for (int j = 1; j <= J; ++j) lengths[j] = (std::uint64_t{1} << j) / static_cast<std::uint64_t>(j);
    auto oracle = oracle_sweep(lengths);
    REQUIRE(oracle.size() == static_cast<std::size_t>(J));
    for (const OracleRun& o : oracle) {
        const LevelRun& r = z.run(o.level);
        CHECK(r.start == o.start);
        CHECK(r.length == o.length);
        CHECK(r.value == o.level);
        // Block mean over T_j is at most 1.
        CHECK(r.length * static_cast<std::uint64_t>(o.level) <= (std::uint64_t{1} << o.level));
    }
    CHECK(z.sweep_ends() == std::vector<int>{1, 4, 13, 37});
}

TEST_CASE("zeta first terms") {
    DyadicSequence z = construct_zeta(34);
    CHECK(z.lookup(1, 2) == 1.0);
    CHECK(z.lookup(1, 3) == 1.0);
    CHECK(z.lookup(3, 12) == 3.0);
    CHECK(z.lookup(3, 13) == 3.0);
    CHECK(z.lookup(3, 11) == 0.0);
    for (std::uint64_t k = 28; k <= 31; ++k) CHECK(z.lookup(4, k) == 4.0);
    CHECK(z.lookup(4, 27) == 0.0);
    // Level 13 is pushed flush right, level 14 restarts at x = 1.
    CHECK(z.run(13).start + z.run(13).length == (std::uint64_t{1} << 14));
    CHECK(z.run(14).start == (std::uint64_t{1} << 14));
}

TEST_CASE("lambda construction lies in b_{p,q}") {
    auto inf = construct_lambda(1.0, INFINITY, 34);
    CHECK(bpq_norm(inf, 1.0, INFINITY).total <= 1.0 + 1e-12);
    // 2^j lambda at covered points equals zeta, bit for bit when p = 1.
    auto z = construct_zeta(34);
    for (int j = 1; j <= 34; ++j) {
        const LevelRun& r = inf.run(j);
        CHECK(std::ldexp(r.value, j) == z.run(j).value);
        double x = r.left_edge() + std::ldexp(0.5, -j);
        CHECK(witness_profile(inf, x, 1.0, 34)[j] == static_cast<double>(j));
    }
    auto half = construct_lambda(0.5, INFINITY, 20);
    for (int j = 1; j <= 20; ++j) CHECK(std::ldexp(half.run(j).value, 2 * j) == doctest::Approx(double(j) * j).epsilon(1e-14));
    auto fin = construct_lambda(1.0, 2.0, 34);
    double bound = 0.0;
    for (int j = 1; j <= 34; ++j) bound += std::pow(j, -std::sqrt(2.0));
    CHECK(bpq_norm(fin, 1.0, 2.0).total <= std::sqrt(bound) + 1e-12);
    CHECK_THROWS_AS(construct_lambda(2.0, 1.0, 10), ParameterError);
}

TEST_CASE("weighted construction") {
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    CHECK_THROWS_AS(construct_weighted_lambda(2.0, INFINITY, psi, 20), PreconditionError);
    CHECK_THROWS_AS(construct_weighted_lambda(1.0, 0.5, psi, 20), ParameterError);

    auto w = construct_weighted_lambda(1.0, INFINITY, psi, 34);
    CHECK(w.run(0).empty());
    // q = inf, p = 1: Psi_j 2^j lambda_j = sum_{k<=j} Psi_k, i.e. 1 after normalising by the running sum.
    double cum = 0.0;
    for (int j = 0; j <= 34; ++j) {
        cum += psi.at_level(j);
        const LevelRun& r = w.run(j);
        if (r.empty()) continue;
        CHECK(psi.at_level(j) * std::ldexp(r.value, j) / cum == doctest::Approx(1.0));
    }
    CHECK(bpq_norm(w, 1.0, INFINITY).total <= 1.0 + 1e-12);

    // q < inf: 2^{j/p} lambda_j Psi_j = 1 at every covered level.
    const double p = 0.5, q = 2.0;
    auto f = construct_weighted_lambda(p, q, psi, 34);
    int covered = 0;
    for (int j = 0; j <= 34; ++j) {
        const LevelRun& r = f.run(j);
        if (r.empty()) continue;
        ++covered;
        double beta = std::pow(psi.at_level(j), p);
        CHECK(std::exp2(j / p) * r.value * std::pow(beta, 1.0 / p) == doctest::Approx(1.0));
    }
    CHECK(covered > 20);
    CHECK(std::isfinite(bpq_norm(f, p, q).total));
}

TEST_CASE("witness profile") {
    auto lam = construct_lambda(1.0, INFINITY, 34);
    auto z = construct_zeta(34);
    for (double x : draw_nondyadic(3, 50, 1.0, 2.0, 34)) {
        auto w = witness_profile(lam, x, 1.0, 34);
        for (int j = 0; j <= 34; ++j) CHECK(w[j] == doctest::Approx(z.at_point(j, x)));
    }
}

TEST_CASE("sampling avoids dyadic points") {
    auto xs = draw_nondyadic(9, 500, 1.0, 2.0, 34);
    CHECK(xs == draw_nondyadic(9, 500, 1.0, 2.0, 34));
    for (double x : xs) {
        CHECK(x >= 1.0);
        CHECK(x < 2.0);
        double y = std::ldexp(x, 34);
        CHECK(y != std::floor(y));
    }
    CHECK_THROWS_AS(draw_nondyadic(1, 5, 1.0, 2.0, 60), ParameterError);
}

TEST_CASE("level density constant is attained") {
    QuarkCoeffs lam(1);
    lam.add({{0}, 2, {5}}, 1.0);
    lam.add({{0}, 2, {6}}, 3.0);
    std::vector<double> alpha{1.0, 1.0, 1.0};
    std::vector<double> xs{1.3, 1.6, 1.9};
    double C = level_density_constant(lam, alpha, 1.0, xs);
    // 2^{jN} |lambda|^p / sum |lambda|^p: the largest entry hit is 3 at x = 1.6 (k = 6).
    CHECK(C == doctest::Approx(4.0 * 3.0 / 4.0));
}
