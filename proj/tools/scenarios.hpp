#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace besovctl {

// Raw option values; reals stay strings so "1/2" and "inf" go through parse_real.
struct VerifyOptions {
    std::string p, q, s, psi, mode;
    int samples = 200;
    int jmax = 34;
    std::uint64_t seed = 1;
    bool grid = false;
};

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Curve {
    double x = 0.0;
    std::vector<double> witness;
    std::vector<double> running; // running max or l^q partial sums
};

struct ScenarioResult {
    std::vector<std::pair<std::string, std::string>> config; // resolved
    std::vector<Criterion> criteria;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<Curve> curves;

    bool passed() const;
};

const std::vector<std::string>& scenario_names();

// Throws besov::ParameterError (usage) for bad options or regime mismatches.
ScenarioResult run_scenario(const std::string& name, const VerifyOptions& opts);

} // namespace besovctl
