#include <doctest.h>

#include "besov/error.hpp"
#include "besov/restrict.hpp"
#include "besov/sampling.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace besov;

namespace {

CounterexampleSpec unit_spec(double s, double p, int jmax) {
    return CounterexampleSpec::make(2, s, p, INFINITY, AdmissibleFn::constant(1.0),
                                    construct_lambda(p, INFINITY, jmax));
}

QuarkCoeffs random_sparse(std::mt19937_64& rng, int codim, std::span<const double> x_pp) {
    const int N = 1 + codim;
    QuarkCoeffs c(N);
    int n = 1 + static_cast<int>(uniform01(rng) * 30);
    for (int e = 0; e < n; ++e) {
        QuarkIndex idx;
        idx.nu = static_cast<int>(uniform01(rng) * 6);
        for (int a = 0; a < N; ++a) idx.beta.push_back(static_cast<int>(uniform01(rng) * 3));
        idx.m.push_back(static_cast<std::int64_t>(uniform01(rng) * 8) - 4);
        for (int i = 0; i < codim; ++i) {
            // Mostly near floor(2^nu x''), so both delta = 0 and 1 see entries.
            auto base = static_cast<std::int64_t>(std::floor(std::ldexp(x_pp[i], idx.nu)));
            idx.m.push_back(base + static_cast<std::int64_t>(uniform01(rng) * 3) - (uniform01(rng) < 0.1 ? 3 : 0));
        }
        c.add(idx, 4.0 * uniform01(rng) - 2.0);
    }
    return c;
}

} // namespace

TEST_CASE("b coefficients") {
    QuarkCoeffs one(2);
    double x = 1.37;
    one.add({{0, 0}, 0, {0, 1}}, 2.0);
    std::vector<int> b0{0};
    std::vector<std::int64_t> m0{0};
    std::vector<double> xs{x};
    CHECK(b_coefficient(one, b0, 0, m0, xs, 1.0) == doctest::Approx(2.0 * BumpFn::line(x - 1.0)));
    CHECK(b_coefficient(QuarkCoeffs(2), b0, 0, m0, xs, 1.0) == 0.0);
    QuarkCoeffs two(2);
    two.add({{0, 0}, 0, {0, 1}}, 1.0);
    two.add({{0, 0}, 0, {0, 2}}, 1.0);
    double b = b_coefficient(two, b0, 0, m0, xs, 1.0);
    CHECK(b == doctest::Approx(BumpFn::line(x - 1.0) + BumpFn::line(x - 2.0)));
    CHECK(b > 0.0);
    CHECK(b <= 1.0);
}

TEST_CASE("J functional examples") {
    QuarkCoeffs one(2);
    one.add({{0, 0}, 0, {0, 1}}, 1.0);
    std::vector<double> xs{1.4};
    std::vector<int> d0{0}, d1{1};
    CHECK(j_functional(one, xs, 1.0, 2.0, 1.0, d0) == doctest::Approx(1.0));
    CHECK(j_functional(one, xs, 1.0, 2.0, 1.0, d1) == 0.0);
}

TEST_CASE("J functional bound with the explicit constant") {
    std::mt19937_64 rng(41);
    const std::pair<double, double> pq[] = {{1.0, 2.0}, {0.5, 1.0}, {2.0, INFINITY}};
    int checked = 0;
    for (int codim = 1; codim <= 2; ++codim)
        for (auto [p, q] : pq)
            for (int t = 0; t < 60; ++t) {
                std::vector<double> xs(codim);
                for (auto& v : xs) v = 3.0 * uniform01(rng);
                QuarkCoeffs c = random_sparse(rng, codim, xs);
                double rho0 = 0.5 + 2.5 * uniform01(rng);
                double a = 0.1 + (rho0 - 0.2) * uniform01(rng);
                std::vector<int> delta(codim);
                for (auto& v : delta) v = uniform01(rng) < 0.5 ? 0 : 1;
                JBoundResult r = jbound_check(c, xs, p, q, rho0 - a, rho0, delta);
                CHECK(r.holds);
                ++checked;
            }
    CHECK(checked == 360);
    // K_alpha = (1 - 2^-alpha)^-codim; factors with infinite exponent drop out.
    CHECK(jbound_constant(2.0, 1.0, INFINITY, 1) == doctest::Approx(std::pow(1.0 - 0.5, -1) * std::pow(1.0 - std::exp2(-0.5), -1)));
    CHECK_THROWS_AS(jbound_constant(0.0, 1.0, 1.0, 1), ParameterError);
}

TEST_CASE("restriction bound for q <= p") {
    auto params = BesovParams::make(2, 1, 0.5, 1.0, 1.0);
    Box strip{{1.0}, {2.0}};
    RestrictionBound zero = restriction_bound_check(QuarkCoeffs(2), params, strip, 8);
    CHECK(zero.lhs == 0.0);

    QuarkCoeffs one(2);
    one.add({{0, 0}, 0, {0, 0}}, 1.0);
    BoundOptions bo;
    bo.grid_level = 8;
    RestrictionBound r = restriction_bound_check(one, params, strip, 16, bo);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0.0);
    // Each slice is psi(x_1) psi(x_2): the norms scale with psi(x_2).
    auto psi_only = GridFunction::sample(Box::cube(1, -2.0, 2.0), 8, [](std::span<const double> x) { return BumpFn::line(x[0]); });
    auto sp = BesovParams::make(1, 1, 0.5, 1.0, 1.0);
    double base = besov_seminorm(psi_only, sp, 0, 5).total;
    double x2 = 1.0 + 0.5 / 16.0;
    CHECK(r.slice_norms[0] == doctest::Approx(base * BumpFn::line(x2)).epsilon(1e-9));

    CHECK_THROWS_AS(restriction_bound_check(one, BesovParams::make(2, 1, 0.5, 1.0, 2.0), strip, 4), ParameterError);
    CHECK_THROWS_AS(restriction_bound_check(one, params, strip, 0), ParameterError);
}

TEST_CASE("divergence scan") {
    auto spec = unit_spec(0.5, 1.0, 20);
    ScanOptions o;
    o.n_samples = 40;
    DivergenceReport r = restriction_divergence_scan(spec, ScanMode::Unweighted, o);
    CHECK(r.sweep_boundaries == std::vector<int>{1, 4, 13});
    for (const auto& c : r.curves)
        for (std::size_t j = 1; j < c.size(); ++j) CHECK(c[j] >= c[j - 1]);
    CHECK(r.divergent_fraction == 1.0);

    ScanOptions w = o;
    CHECK_THROWS_AS(restriction_divergence_scan(spec, ScanMode::Weighted, w), ParameterError);
    w.target_weight = AdmissibleFn::log_power(0.25, -1.0);
    CHECK_THROWS_AS(restriction_divergence_scan(spec, ScanMode::Unweighted, w), ParameterError);
}

TEST_CASE("divergent verdict needs growth across two sweeps") {
    std::vector<int> b{1, 4, 13};
    std::vector<double> grow{0, 1, 1, 1, 4, 4, 4, 4, 4, 4, 4, 4, 4, 13};
    std::vector<double> flat = grow;
    flat[13] = 4;
    CHECK(grows_across_sweeps(grow, b));
    CHECK_FALSE(grows_across_sweeps(flat, b));
    std::vector<int> short_b{1, 4};
    CHECK_FALSE(grows_across_sweeps(grow, short_b));
}

TEST_CASE("embedding scans") {
    auto weak = unit_spec(0.5, 1.0, 20);
    auto bmo = unit_spec(1.0, 1.0, 20);
    auto hold = unit_spec(1.5, 1.0, 20);
    ScanOptions o;
    o.n_samples = 30;
    CHECK_THROWS_AS(embedding_failure_scan(weak, EmbeddingMode::Bmo, o), ParameterError);
    CHECK_THROWS_AS(embedding_failure_scan(bmo, EmbeddingMode::Holder, o), ParameterError);
    CHECK_THROWS_AS(embedding_failure_scan(hold, EmbeddingMode::WeakLp, o), ParameterError);

    // Holder witness is the divergence witness.
    DivergenceReport h = embedding_failure_scan(hold, EmbeddingMode::Holder, o);
    DivergenceReport d = restriction_divergence_scan(hold, ScanMode::Unweighted, o);
    CHECK(h.curves == d.curves);

    // BMO witness: constant times the level profile.
    DivergenceReport b = embedding_failure_scan(bmo, EmbeddingMode::Bmo, o);
    BumpFn psi(2);
    for (std::size_t i = 0; i < b.samples.size(); ++i)
        for (int j = 0; j <= 20; ++j)
            CHECK(b.witness[i][j] == doctest::Approx(bmo_bump_constant() * lambda_profile(bmo, psi, b.samples[i], j)));
    CHECK(b.divergent_fraction == 1.0);
    CHECK(embedding_failure_scan(weak, EmbeddingMode::WeakLp, o).divergent_fraction == 1.0);
}

TEST_CASE("bump constants") {
    // Independent Simpson rule on [-1,1].
    const int n = 20000;
    auto simpson = [&](auto f) {
        double h = 2.0 / n, s = f(-1.0) + f(1.0);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(-1.0 + i * h);
        return s * h / 3.0;
    };
    double mean = simpson([](double x) { return BumpFn::line(x); }) / 2.0;
    double osc = simpson([&](double x) { return std::abs(BumpFn::line(x) - mean); }) / 2.0;
    CHECK(bmo_bump_constant() == doctest::Approx(osc).epsilon(1e-6));
    // psi1 is even and decreasing on [0,2], so f*(t) = psi1(t/2) and the norm is sup t^{1/2} f*(t).
    double best = 0.0;
    for (int i = 1; i < 4000; ++i) {
        double t = 4.0 * i / 4000.0;
        best = std::max(best, std::pow(t, 0.5) * BumpFn::line(t / 2.0));
    }
    CHECK(weak_lp_bump_norm(2.0) == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("weighted membership") {
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    ScanOptions o;
    o.n_samples = 50;
    CHECK_THROWS_AS(weighted_membership_check(unit_spec(0.5, 1.0, 34), psi, o), PreconditionError);
    MembershipReport m = weighted_membership_check(unit_spec(0.5, 2.0, 34), psi, o);
    CHECK(m.bounded);
    for (double v : m.sup_witness) CHECK(v <= 1.0);
    for (bool c : m.control_divergent) CHECK(c);
}

TEST_CASE("weighted embedding inequality") {
    std::mt19937_64 rng(77);
    auto phi = AdmissibleFn::constant(1.0);
    auto psi = AdmissibleFn::log_power(0.25, -1.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<LevelRun> runs;
        for (int j = 0; j <= 12; ++j) {
            std::uint64_t L = 1 + static_cast<std::uint64_t>(uniform01(rng) * ((1u << j) - 0.5));
            runs.push_back({j, std::uint64_t{1} << j, L, uniform01(rng)});
        }
        auto seq = DyadicSequence::from_runs(runs, 12);
        CHECK(embedding_bound_check(seq, 1.0, 2.0, 1.0, phi, psi).holds);
        CHECK(embedding_bound_check(seq, 2.0, INFINITY, 1.5, phi, psi).holds);
    }
}
