#include "scenarios.hpp"

#include "besov/admissible.hpp"
#include "besov/error.hpp"
#include "besov/io.hpp"
#include "besov/parse.hpp"
#include "besov/quark.hpp"
#include "besov/restrict.hpp"
#include "besov/sampling.hpp"
#include "besov/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace besovctl {

using namespace besov;

namespace {

constexpr double kInf = HUGE_VAL;
// Same pinned tolerances as the acceptance harness.
constexpr double kGridRelTol = 0.01;
constexpr double kControlDrift = 0.25;
constexpr double kDefaultWeight[] = {0.25, -1.0};

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double real_or(const std::string& text, double fallback) { return text.empty() ? fallback : parse_real(text); }

AdmissibleFn weight_or_default(const std::string& text) {
    return text.empty() ? AdmissibleFn::log_power(kDefaultWeight[0], kDefaultWeight[1]) : parse_admissible(text);
}

void check_counts(const VerifyOptions& o) {
    if (o.samples < 1) throw ParameterError("--samples must be >= 1");
    if (o.jmax < 1 || o.jmax > 48) throw ParameterError("--jmax must be in [1, 48]");
}

std::string fraction(int k, int n) { return std::to_string(k) + "/" + std::to_string(n); }

void base_config(ScenarioResult& r, const std::string& name, double p, double q, double s, const VerifyOptions& o) {
    r.config = {{"scenario", name},
                {"p", format_real(p)},
                {"q", format_real(q)},
                {"s", format_real(s)},
                {"samples", std::to_string(o.samples)},
                {"jmax", std::to_string(o.jmax)},
                {"seed", std::to_string(o.seed)}};
}

void collect_curves(ScenarioResult& r, const DivergenceReport& rep) {
    for (std::size_t i = 0; i < rep.samples.size(); ++i) r.curves.push_back({rep.samples[i], rep.witness[i], rep.curves[i]});
}

void grid_criterion(ScenarioResult& r, const GridCheck& g) {
    r.criteria.push_back({"grid_dominance", g.performed && g.fitted_c > 0.0 && g.worst_ratio >= 1.0 - kGridRelTol,
                          fmt("c'=%.5g worst_ratio=%.4g strict_violations=%d/%d", g.fitted_c, g.worst_ratio,
                              g.violations, g.comparisons)});
}

ScanOptions scan_options(const VerifyOptions& o) {
    ScanOptions so;
    so.n_samples = o.samples;
    so.seed = o.seed;
    so.grid_check = o.grid;
    so.grid_samples = std::min(o.samples, 20);
    return so;
}

ScenarioResult bounded(const VerifyOptions& o) {
    double p = real_or(o.p, 1.0), q = real_or(o.q, 1.0), s = real_or(o.s, 0.5);
    if (q > p) throw ParameterError("bounded scenario needs q <= p");
    ScenarioResult r;
    base_config(r, "bounded", p, q, s, o);
    // Cloud: the unweighted counterexample coefficients up to level 4, read in B^s_{p,q}.
    auto spec = CounterexampleSpec::make(2, 0.5, 1.0, kInf, AdmissibleFn::constant(1.0), construct_lambda(1.0, kInf, 34));
    QuarkCoeffs cloud = counterexample_coeffs(spec, 4);
    auto params = BesovParams::make(2, 1, s, p, q);
    Box strip{{1.0}, {2.0}};
    BoundOptions b8, b10;
    b8.grid_level = 8;
    b10.grid_level = 10;
    RestrictionBound a = restriction_bound_check(cloud, params, strip, 64, b8);
    RestrictionBound b = restriction_bound_check(cloud, params, strip, 64, b10);
    double drift = std::abs(b.ratio / a.ratio - 1.0);
    r.criteria.push_back({"finite_ratio", std::isfinite(a.ratio) && a.ratio > 0.0,
                          fmt("ratio_J8=%.6g ratio_J10=%.6g", a.ratio, b.ratio)});
    r.criteria.push_back({"ratio_stable", drift <= kControlDrift, fmt("drift=%.4g (tol %.2f)", drift, kControlDrift)});
    r.summary = {{"ratio_J8", format_real(a.ratio)}, {"ratio_J10", format_real(b.ratio)}, {"drift", format_real(drift)}};
    return r;
}

ScenarioResult divergence(const VerifyOptions& o) {
    double p = real_or(o.p, 1.0), q = real_or(o.q, kInf), s = real_or(o.s, 0.5);
    check_counts(o);
    ScenarioResult r;
    base_config(r, "divergence", p, q, s, o);
    auto spec = CounterexampleSpec::make(2, s, p, q, AdmissibleFn::constant(1.0), construct_lambda(p, q, o.jmax));
    DivergenceReport rep = restriction_divergence_scan(spec, ScanMode::Unweighted, scan_options(o));
    double norm = bpq_norm(spec.sequence, p, q).total;
    int divergent = static_cast<int>(std::count(rep.divergent.begin(), rep.divergent.end(), true));
    // For q = inf the construction has b_{p,inf} norm at most 1.
    if (std::isinf(q)) r.criteria.push_back({"bpq_norm_le_1", norm <= 1.0 + 1e-12, fmt("norm=%.15g", norm)});
    r.criteria.push_back({"all_divergent", rep.divergent_fraction == 1.0, fraction(divergent, o.samples)});
    if (o.grid) grid_criterion(r, rep.grid);
    std::string ends;
    for (int e : rep.sweep_boundaries) ends += (ends.empty() ? "" : ",") + std::to_string(e);
    r.summary = {{"bpq_norm", format_real(norm)},
                 {"sweep_ends", ends},
                 {"divergent_fraction", format_real(rep.divergent_fraction)}};
    collect_curves(r, rep);
    return r;
}

ScenarioResult embedding(const VerifyOptions& o) {
    double p = real_or(o.p, 1.0);
    EmbeddingMode mode;
    double s_default;
    if (o.mode == "weaklp" || o.mode.empty()) {
        mode = EmbeddingMode::WeakLp;
        s_default = 0.5 / p;
    } else if (o.mode == "bmo") {
        mode = EmbeddingMode::Bmo;
        s_default = 1.0 / p;
    } else if (o.mode == "holder") {
        mode = EmbeddingMode::Holder;
        s_default = 1.0 / p + 0.5;
    } else {
        throw ParameterError("--mode must be weaklp, bmo or holder");
    }
    double s = real_or(o.s, s_default);
    check_counts(o);
    ScenarioResult r;
    base_config(r, "embedding", p, kInf, s, o);
    r.config.emplace_back("mode", to_string(mode));
    auto spec = CounterexampleSpec::make(2, s, p, kInf, AdmissibleFn::constant(1.0), construct_lambda(p, kInf, o.jmax));
    DivergenceReport rep = embedding_failure_scan(spec, mode, scan_options(o));
    int divergent = static_cast<int>(std::count(rep.divergent.begin(), rep.divergent.end(), true));
    r.criteria.push_back({"all_divergent", rep.divergent_fraction == 1.0, fraction(divergent, o.samples)});
    if (o.grid) grid_criterion(r, rep.grid);
    r.summary = {{"divergent_fraction", format_real(rep.divergent_fraction)}};
    if (mode == EmbeddingMode::Bmo) r.summary.emplace_back("bmo_bump_constant", format_real(bmo_bump_constant()));
    collect_curves(r, rep);
    return r;
}

ScenarioResult weighted_bound(const VerifyOptions& o) {
    double p = real_or(o.p, 2.0), s = real_or(o.s, 0.5);
    AdmissibleFn psi = weight_or_default(o.psi);
    check_counts(o);
    ScenarioResult r;
    base_config(r, "weighted-bound", p, kInf, s, o);
    r.config.emplace_back("psi", psi.describe());
    auto spec = CounterexampleSpec::make(2, s, p, kInf, AdmissibleFn::constant(1.0), construct_lambda(p, kInf, o.jmax));
    ScanOptions so;
    so.n_samples = o.samples;
    so.seed = o.seed;
    MembershipReport m = weighted_membership_check(spec, psi, so);
    double sup = 0.0;
    for (double v : m.sup_witness) sup = std::max(sup, v);
    int control = static_cast<int>(std::count(m.control_divergent.begin(), m.control_divergent.end(), true));
    r.criteria.push_back({"bounded", m.bounded, fmt("lq_bound=%.6g", m.lq_bound)});
    r.criteria.push_back({"witness_le_1", sup <= 1.0, fmt("max=%.6g", sup)});
    r.criteria.push_back({"control_divergent", control == o.samples, fraction(control, o.samples)});
    r.summary = {{"max_weighted_witness", format_real(sup)}, {"lq_bound", format_real(m.lq_bound)}};
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
        Curve c{m.samples[i], m.weighted_witness[i], {}};
        double run = 0.0;
        for (double v : c.witness) c.running.push_back(run = std::max(run, v));
        r.curves.push_back(std::move(c));
    }
    return r;
}

ScenarioResult weighted_divergence(const VerifyOptions& o) {
    double p = real_or(o.p, 1.0), q = real_or(o.q, kInf), s = real_or(o.s, 0.5);
    AdmissibleFn psi = weight_or_default(o.psi);
    check_counts(o);
    ScenarioResult r;
    base_config(r, "weighted-divergence", p, q, s, o);
    r.config.emplace_back("psi", psi.describe());
    auto spec = CounterexampleSpec::make(2, s, p, q, AdmissibleFn::constant(1.0),
                                         construct_weighted_lambda(p, q, psi, o.jmax));
    ScanOptions so = scan_options(o);
    so.target_weight = psi;
    DivergenceReport rep = restriction_divergence_scan(spec, ScanMode::Weighted, so);
    int two = static_cast<int>(std::count_if(rep.covered_levels.begin(), rep.covered_levels.end(), [](int c) { return c >= 2; }));
    int divergent = static_cast<int>(std::count(rep.divergent.begin(), rep.divergent.end(), true));
    double covered = 0.0;
    for (const LevelRun& run : spec.sequence.runs()) covered += std::ldexp(static_cast<double>(run.length), -run.level);
    r.criteria.push_back({"two_covered_levels", two == o.samples, fraction(two, o.samples)});
    r.criteria.push_back({"all_divergent", rep.divergent_fraction == 1.0, fraction(divergent, o.samples)});
    r.summary = {{"covered_measure", format_real(covered)},
                 {"weight_chi", format_real(weighted_chi(p, q))},
                 {"divergent_fraction", format_real(rep.divergent_fraction)}};
    collect_curves(r, rep);
    return r;
}

std::vector<double> random_nonincreasing(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double cur = 1.0 + uniform01(rng);
    for (auto& x : v) {
        double u = uniform01(rng);
        if (u >= 0.98)
            cur *= 0.1 * uniform01(rng);
        else if (u >= 0.3)
            cur *= 0.9 + 0.1 * uniform01(rng);
        x = cur;
    }
    return v;
}

ScenarioResult lemmas(const VerifyOptions& o) {
    if (o.samples < 1) throw ParameterError("--samples must be >= 1");
    const int J = std::min(o.jmax, 20);
    ScenarioResult r;
    r.config = {{"scenario", "lemmas"}, {"samples", std::to_string(o.samples)}, {"jmax", std::to_string(J)},
                {"seed", std::to_string(o.seed)}};
    std::mt19937_64 rng(o.seed);

    double worst = 0.0;
    for (double p : {0.5, 1.0, 2.0})
        for (int t = 0; t < o.samples; ++t) {
            std::vector<double> lam(1 + static_cast<std::size_t>(uniform01(rng) * 2000));
            for (auto& v : lam) v = uniform01(rng) < 0.2 ? 0.0 : 4.0 * uniform01(rng) - 2.0;
            lam[0] = 1.0;
            AmalgamResult a = amalgam_integral(lam, p);
            worst = std::max(worst, std::abs(a.lhs - a.rhs) / a.lhs);
        }
    r.criteria.push_back({"amalgam_identity", worst <= 1e-10, fmt("worst_rel_err=%.3g", worst)});

    int cond = 0, point = 0;
    for (int t = 0; t < o.samples; ++t) {
        auto lam = random_nonincreasing(rng, 1 + static_cast<std::size_t>(uniform01(rng) * 10000));
        if (!condensation_check(lam, J).holds) ++cond;
        if (!dyadic_point_check(lam, std::exp2(8.0 * uniform01(rng) - 4.0), J).holds) ++point;
    }
    r.criteria.push_back({"condensation", cond == 0, "failures=" + fraction(cond, o.samples)});
    r.criteria.push_back({"dyadic_point", point == 0, "failures=" + fraction(point, o.samples)});

    // 1/k^2 at i = 2^k, 2^-i elsewhere.
    std::vector<double> spiky((std::size_t{1} << (J + 1)) - 1);
    for (std::size_t i = 1; i <= spiky.size(); ++i) {
        bool pow2 = (i & (i - 1)) == 0 && i > 1;
        double k = std::log2(static_cast<double>(i));
        spiky[i - 1] = pow2 ? 1.0 / (k * k) : std::ldexp(1.0, -static_cast<int>(i));
    }
    CondensationResult c = condensation_check(spiky, J, false);
    r.criteria.push_back({"non_monotone_violates", c.condensed > c.upper,
                          fmt("condensed=%.6g bound=%.6g", c.condensed, c.upper)});

    const std::pair<double, double> pq[] = {{1.0, 2.0}, {0.5, 1.0}, {2.0, kInf}};
    int jfail = 0;
    for (int t = 0; t < o.samples; ++t) {
        int codim = 1 + t % 2;
        auto [p, q] = pq[(t / 2) % 3];
        std::vector<double> xs(codim);
        for (auto& v : xs) v = 3.0 * uniform01(rng);
        QuarkCoeffs coeffs(1 + codim);
        int n = 1 + static_cast<int>(uniform01(rng) * 30);
        for (int e = 0; e < n; ++e) {
            QuarkIndex idx;
            idx.nu = static_cast<int>(uniform01(rng) * 6);
            for (int a = 0; a <= codim; ++a) idx.beta.push_back(static_cast<int>(uniform01(rng) * 3));
            idx.m.push_back(static_cast<std::int64_t>(uniform01(rng) * 8) - 4);
            for (double x : xs)
                idx.m.push_back(static_cast<std::int64_t>(std::floor(std::ldexp(x, idx.nu))) +
                                static_cast<std::int64_t>(uniform01(rng) * 3));
            coeffs.add(idx, 4.0 * uniform01(rng) - 2.0);
        }
        double rho0 = 0.5 + 2.5 * uniform01(rng);
        double a = 0.1 + (rho0 - 0.2) * uniform01(rng);
        std::vector<int> delta(codim);
        for (auto& v : delta) v = uniform01(rng) < 0.5 ? 0 : 1;
        if (!jbound_check(coeffs, xs, p, q, rho0 - a, rho0, delta).holds) ++jfail;
    }
    r.criteria.push_back({"jfunctional_bound", jfail == 0, "failures=" + fraction(jfail, o.samples)});
    return r;
}

} // namespace

bool ScenarioResult::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"bounded",        "divergence",          "embedding",
                                                "weighted-bound", "weighted-divergence", "lemmas"};
    return names;
}

ScenarioResult run_scenario(const std::string& name, const VerifyOptions& opts) {
    if (name == "bounded") return bounded(opts);
    if (name == "divergence") return divergence(opts);
    if (name == "embedding") return embedding(opts);
    if (name == "weighted-bound") return weighted_bound(opts);
    if (name == "weighted-divergence") return weighted_divergence(opts);
    if (name == "lemmas") return lemmas(opts);
    throw ParameterError("unknown scenario '" + name + "'");
}

} // namespace besovctl
