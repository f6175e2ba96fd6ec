#include <doctest.h>

#include "besov/kernels.hpp"
#include "besov/normest.hpp"
#include "besov/quark.hpp"
#include "besov/sampling.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace besov;

TEST_CASE("binomial weights") {
    CHECK(kernels::binomial_weights(1) == std::vector<double>{-1.0, 1.0});
    CHECK(kernels::binomial_weights(3) == std::vector<double>{-1.0, 3.0, -3.0, 1.0});
}

TEST_CASE("serial and parallel shell sups agree exactly") {
    std::mt19937_64 rng(17);
    for (int dim = 1; dim <= 2; ++dim) {
        const int J = dim == 1 ? 9 : 5;
        for (int t = 0; t < 6; ++t) {
            auto g = GridFunction::sample(Box::cube(dim, -2.0, 2.0), J, [&](std::span<const double>) {
                // Mostly zero so the sparse 1-D path has gaps to skip.
                return uniform01(rng) < 0.7 ? 0.0 : 2.0 * uniform01(rng) - 1.0;
            });
            for (int M : {1, 2, 3})
                for (double p : {0.5, 1.0, 2.0, HUGE_VAL})
                    for (int j = 0; j <= 2; ++j) {
                        auto shifts = shell_shifts(dim, J, j, true);
                        auto a = kernels::serial::shell_sup(g, shifts, M, p);
                        auto b = kernels::omp::shell_sup(g, shifts, M, p);
                        REQUIRE(a.has_value() == b.has_value());
                        if (a) CHECK(*a == *b);
                    }
        }
    }
}

TEST_CASE("empty domains give no value") {
    auto g = GridFunction::sample(Box::cube(1, 0.0, 1.0), 3, [](std::span<const double> x) { return x[0]; });
    std::vector<kernels::Shift> huge{{8}};
    CHECK_FALSE(kernels::serial::shell_sup(g, huge, 2, 1.0).has_value());
    CHECK_FALSE(kernels::omp::shell_sup(g, huge, 2, 1.0).has_value());
}

TEST_CASE("serial and parallel synthesis agree") {
    std::mt19937_64 rng(23);
    for (int N = 1; N <= 2; ++N) {
        BumpFn bump(N);
        auto params = BesovParams::make(N, N, 0.75, 1.0, 1.0);
        QuarkCoeffs c(N);
        for (int i = 0; i < 40; ++i) {
            QuarkIndex idx;
            idx.nu = static_cast<int>(uniform01(rng) * 4);
            for (int a = 0; a < N; ++a) {
                idx.beta.push_back(static_cast<int>(uniform01(rng) * 2));
                idx.m.push_back(static_cast<std::int64_t>(uniform01(rng) * (4 << idx.nu)) - (2 << idx.nu));
            }
            c.add(idx, 2.0 * uniform01(rng) - 1.0);
        }
        Box box = Box::cube(N, -3.0, 3.0);
        auto a = kernels::serial::synthesize(c, bump, params, box, N == 1 ? 8 : 5);
        auto b = kernels::omp::synthesize(c, bump, params, box, N == 1 ? 8 : 5);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
    }
}
