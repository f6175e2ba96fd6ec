#include <doctest.h>

#include "besov/error.hpp"
#include "besov/io.hpp"
#include "besov/normest.hpp"
#include "besov/seqspace.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

using namespace besov;

TEST_CASE("format_real round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 12345678.9}) CHECK(std::stod(format_real(v)) == v);
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(INFINITY) == "inf");
}

TEST_CASE("sequence CSV") {
    auto z = construct_lambda(1.0, INFINITY, 20);
    std::stringstream ss;
    write_comment_header(ss, {"kind=lambda", "p=1"});
    write_sequence_csv(ss, z);
    CHECK(ss.str().rfind("# kind=lambda\n", 0) == 0);
    auto back = read_sequence_csv(ss);
    REQUIRE(back.max_level() == 20);
    for (int j = 0; j <= 20; ++j) {
        CHECK(back.run(j).start == z.run(j).start);
        CHECK(back.run(j).length == z.run(j).length);
        CHECK(back.run(j).value == z.run(j).value);
    }
    std::stringstream bad("level,start,length,value\n1,2,x,1\n");
    CHECK_THROWS_AS(read_sequence_csv(bad), IoError);
}

TEST_CASE("coefficient CSV") {
    QuarkCoeffs c(2, 2.5);
    c.add({{0, 1}, 3, {48, -2}}, 0.125);
    c.add({{2, 0}, 0, {1, 1}}, -7.0);
    std::stringstream ss;
    write_coeffs_csv(ss, c);
    QuarkCoeffs back = read_coeffs_csv(ss);
    CHECK(back.dim() == 2);
    CHECK(back.decay() == 2.5);
    CHECK(back.entries() == c.entries());
}

TEST_CASE("grid CSV") {
    auto g = GridFunction::sample(Box{{0.0, -1.0}, {0.5, 0.0}}, 3,
                                  [](std::span<const double> x) { return x[0] * 10.0 + x[1] / 3.0; });
    std::stringstream ss;
    write_grid_csv(ss, g);
    GridFunction back = read_grid_csv(ss);
    CHECK(back.level() == 3);
    CHECK(back.box().lower == g.box().lower);
    REQUIRE(back.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == g[i]);
    std::stringstream truncated("# level=1\n# lower=0\n# upper=1\nvalue\n1\n");
    CHECK_THROWS_AS(read_grid_csv(truncated), IoError);
}

TEST_CASE("norm report JSON layout") {
    NormReport r;
    r.lp = 1.5;
    r.shells = {{0, 2.0, 2.0}, {1, 1.0, 0.5}};
    r.seminorm = 2.0;
    r.total = 3.5;
    r.flags = {"note"};
    auto j = nlohmann::json::parse(norm_report_json(r, {{"norm", "besov"}}));
    CHECK(j["lp"] == 1.5);
    CHECK(j["total"] == 3.5);
    CHECK(j["shells"].size() == 2);
    CHECK(j["shells"][1]["j"] == 1);
    CHECK(j["shells"][1]["value"] == 1.0);
    CHECK(j["flags"][0] == "note");
    CHECK(j["config"]["norm"] == "besov");
    std::stringstream csv;
    write_norm_report_csv(csv, r);
    CHECK(csv.str().find("j,value,modulus") != std::string::npos);
}
