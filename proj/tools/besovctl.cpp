// besovctl: construct sequences, measure grid norms, run the verification scenarios.
// Exit codes: 0 pass, 1 I/O, 2 usage, 3 criterion failure.
#include "scenarios.hpp"

#include "besov/admissible.hpp"
#include "besov/error.hpp"
#include "besov/io.hpp"
#include "besov/normest.hpp"
#include "besov/parse.hpp"
#include "besov/quark.hpp"
#include "besov/seqspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace besov;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCriterion = 3;

using Config = std::vector<std::pair<std::string, std::string>>;

std::string version_line() { return std::string("besovctl ") + BESOV_VERSION; }

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

void close_out(std::ofstream& os, const std::string& path) {
    os.close();
    if (!os) throw IoError("failed writing '" + path + "'");
}

std::vector<std::string> header_lines(const std::string& command, const Config& cfg) {
    std::vector<std::string> lines{version_line(), "command=" + command};
    for (const auto& [k, v] : cfg) lines.push_back(k + "=" + v);
    return lines;
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

// ---- construct ----

struct ConstructArgs {
    std::string kind, p = "1", q = "inf", psi, out;
    int jmax = 34;
};

int run_construct(const ConstructArgs& a) {
    double p = parse_real(a.p), q = parse_real(a.q);
    if (a.jmax < 1 || a.jmax > kMaxSequenceLevel) throw ParameterError("--jmax must be in [1, 62]");
    DyadicSequence seq;
    Config cfg{{"kind", a.kind}, {"jmax", std::to_string(a.jmax)}};
    if (a.kind == "zeta") {
        seq = construct_zeta(a.jmax);
    } else if (a.kind == "lambda") {
        seq = construct_lambda(p, q, a.jmax);
    } else {
        AdmissibleFn psi = a.psi.empty() ? AdmissibleFn::log_power(0.25, -1.0) : parse_admissible(a.psi);
        seq = construct_weighted_lambda(p, q, psi, a.jmax);
        cfg.emplace_back("psi", psi.describe());
    }
    if (a.kind != "zeta") {
        cfg.emplace_back("p", format_real(p));
        cfg.emplace_back("q", format_real(q));
    }
    // zeta is summarized in b_{1,inf}, where its level means are at most 1 times 2^j.
    double np = a.kind == "zeta" ? 1.0 : p, nq = a.kind == "zeta" ? HUGE_VAL : q;
    double norm = bpq_norm(seq, np, nq).total;
    int levels = 0;
    for (const LevelRun& r : seq.runs()) levels += r.empty() ? 0 : 1;
    std::string ends;
    for (int e : seq.sweep_ends()) ends += (ends.empty() ? "" : ",") + std::to_string(e);

    if (!a.out.empty()) {
        auto os = open_out(a.out);
        write_comment_header(os, header_lines("construct", cfg));
        write_sequence_csv(os, seq);
        close_out(os, a.out);
    }
    for (const auto& line : header_lines("construct", cfg)) std::cout << "# " << line << '\n';
    std::cout << "levels=" << levels << '\n'
              << "sweep_ends=" << ends << '\n'
              << "bpq_norm=" << format_real(norm) << '\n'
              << "bpq_norm_le_1=" << (norm <= 1.0 + 1e-12 ? "yes" : "no") << '\n';
    return 0;
}

// ---- measure ----

struct MeasureArgs {
    std::string norm, input, s = "1/2", p = "1", q = "inf", psi, r, kernel = "omp", out;
    std::optional<std::string> constant;
    bool bump = false;
    int dim = 1, level = 8, M = 0, jlo = 0, jhi = -1, floor = -1;
};

int run_measure(const MeasureArgs& a) {
    if (a.dim < 1 || a.dim > 3) throw ParameterError("--dim must be 1, 2 or 3");
    int sources = (a.input.empty() ? 0 : 1) + (a.bump ? 1 : 0) + (a.constant ? 1 : 0);
    if (sources != 1) throw ParameterError("give exactly one of --input, --bump, --constant");

    Config cfg{{"norm", a.norm}};
    GridFunction g(Box::cube(1, 0.0, 1.0), 0);
    if (!a.input.empty()) {
        std::ifstream is(a.input);
        if (!is) throw IoError("cannot open '" + a.input + "'");
        g = read_grid_csv(is);
        cfg.emplace_back("input", a.input);
    } else if (a.bump) {
        BumpFn psi(a.dim);
        g = GridFunction::sample(Box::cube(a.dim, -2.0, 2.0), a.level, [&](std::span<const double> x) { return psi(x); });
        cfg.emplace_back("input", "bump");
    } else {
        double c = parse_real(*a.constant);
        g = GridFunction::sample(Box::cube(a.dim, 0.0, 1.0), a.level, [c](std::span<const double>) { return c; });
        cfg.emplace_back("input", "constant:" + format_real(c));
    }
    cfg.emplace_back("dim", std::to_string(g.dim()));
    cfg.emplace_back("level", std::to_string(g.level()));

    int jhi = a.jhi >= 0 ? a.jhi : g.level() - 2;
    NormReport rep;
    if (a.norm == "besov" || a.norm == "gbesov") {
        double s = parse_real(a.s), p = parse_real(a.p), q = parse_real(a.q);
        AdmissibleFn psi = AdmissibleFn::constant(1.0);
        if (a.norm == "gbesov") {
            if (a.psi.empty()) throw ParameterError("gbesov needs --psi");
            psi = parse_admissible(a.psi);
            cfg.emplace_back("psi", psi.describe());
        }
        auto params = BesovParams::make(g.dim(), g.dim(), s, p, q, psi, a.M);
        ShellOptions so;
        so.kernel = a.kernel == "serial" ? KernelChoice::Serial : KernelChoice::Parallel;
        // The generalized norm takes the sup over t inside each shell.
        so.cumulative = a.norm == "gbesov";
        rep = besov_seminorm(g, params, a.jlo, jhi, so);
        cfg.insert(cfg.end(), {{"s", format_real(s)}, {"p", format_real(p)}, {"q", format_real(q)},
                               {"M", std::to_string(params.M)}, {"j_lo", std::to_string(a.jlo)},
                               {"j_hi", std::to_string(jhi)}});
    } else if (a.norm == "holder") {
        double s = parse_real(a.s);
        int M = a.M > 0 ? a.M : 1;
        rep = holder_norm(g, s, M, a.jlo, jhi);
        cfg.insert(cfg.end(), {{"alpha", format_real(s)}, {"M", std::to_string(M)}});
    } else if (a.norm == "bmo") {
        int floor = a.floor >= 0 ? a.floor : g.level() - 1;
        rep.seminorm = bmo_norm(g, floor);
        rep.total = rep.seminorm;
        cfg.emplace_back("floor", std::to_string(floor));
    } else {
        if (a.r.empty()) throw ParameterError("weaklp needs --r");
        double r = parse_real(a.r);
        if (!(r > 0.0)) throw ParameterError("--r must be positive");
        rep.seminorm = weak_lp_norm(g, r);
        rep.total = rep.seminorm;
        cfg.emplace_back("r", format_real(r));
    }

    if (!a.out.empty()) {
        auto os = open_out(a.out);
        if (ends_with(a.out, ".json")) {
            Config full{{"tool", version_line()}};
            full.insert(full.end(), cfg.begin(), cfg.end());
            os << norm_report_json(rep, full) << '\n';
        } else {
            write_comment_header(os, header_lines("measure", cfg));
            write_norm_report_csv(os, rep);
        }
        close_out(os, a.out);
    }
    for (const auto& line : header_lines("measure", cfg)) std::cout << "# " << line << '\n';
    for (const ShellEntry& e : rep.shells)
        std::cout << "shell " << e.j << " value=" << format_real(e.value) << " modulus=" << format_real(e.modulus) << '\n';
    for (const std::string& f : rep.flags) std::cout << "flag: " << f << '\n';
    std::cout << "lp=" << format_real(rep.lp) << '\n'
              << "seminorm=" << format_real(rep.seminorm) << '\n'
              << "total=" << format_real(rep.total) << '\n';
    return 0;
}

// ---- verify ----

struct VerifyOutputs {
    std::string report, plot, curves;
};

void write_report(const std::string& path, const std::string& scenario, const besovctl::ScenarioResult& r) {
    nlohmann::ordered_json j;
    j["tool"] = "besovctl";
    j["version"] = BESOV_VERSION;
    j["command"] = "verify " + scenario;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) j["config"][k] = v;
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& c : r.criteria) j["criteria"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.summary) j["summary"][k] = v;
    j["result"] = r.passed() ? "PASS" : "FAIL";
    auto os = open_out(path);
    os << j.dump(2) << '\n';
    close_out(os, path);
}

// gnuplot blocks: one per sample, "j curve" rows, selectable with `index`.
void write_plot(const std::string& path, const std::string& scenario, const besovctl::ScenarioResult& r) {
    auto os = open_out(path);
    write_comment_header(os, header_lines("verify " + scenario, r.config));
    for (std::size_t i = 0; i < r.curves.size(); ++i) {
        const auto& c = r.curves[i];
        if (i > 0) os << "\n\n";
        os << "# sample " << i << " x=" << format_real(c.x) << '\n';
        for (std::size_t jj = 0; jj < c.running.size(); ++jj) os << jj << ' ' << format_real(c.running[jj]) << '\n';
    }
    close_out(os, path);
}

void write_curves(const std::string& path, const std::string& scenario, const besovctl::ScenarioResult& r) {
    auto os = open_out(path);
    write_comment_header(os, header_lines("verify " + scenario, r.config));
    os << "sample,x,j,witness,curve\n";
    for (std::size_t i = 0; i < r.curves.size(); ++i) {
        const auto& c = r.curves[i];
        for (std::size_t jj = 0; jj < c.witness.size(); ++jj)
            os << i << ',' << format_real(c.x) << ',' << jj << ',' << format_real(c.witness[jj]) << ','
               << format_real(jj < c.running.size() ? c.running[jj] : 0.0) << '\n';
    }
    close_out(os, path);
}

int run_verify(const std::string& scenario, const besovctl::VerifyOptions& o, const VerifyOutputs& out) {
    besovctl::ScenarioResult r = besovctl::run_scenario(scenario, o);
    if (!out.report.empty()) write_report(out.report, scenario, r);
    if (!out.plot.empty()) write_plot(out.plot, scenario, r);
    if (!out.curves.empty()) write_curves(out.curves, scenario, r);
    for (const auto& line : header_lines("verify " + scenario, r.config)) std::cout << "# " << line << '\n';
    for (const auto& c : r.criteria) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    for (const auto& [k, v] : r.summary) std::cout << k << '=' << v << '\n';
    std::cout << "result=" << (r.passed() ? "PASS" : "FAIL") << '\n';
    return r.passed() ? 0 : kExitCriterion;
}

// CLI11 only reads config files at the top level, so scenario files are parsed with its
// INI reader and fed to the subcommand's options; flags given on the command line win.
void apply_config(CLI::App* sc, const std::string& path) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path);
    } catch (const CLI::FileError& e) {
        throw IoError(e.what());
    }
    for (const CLI::ConfigItem& item : items) {
        if (item.name == "++" || item.name == "--") continue; // section markers
        if (!item.parents.empty() || item.name == "config") throw ParameterError("unsupported config key '" + item.fullname() + "'");
        CLI::Option* opt = sc->get_option_no_throw("--" + item.name);
        if (opt == nullptr) throw ParameterError("unknown config key '" + item.name + "'");
        if (opt->count() > 0) continue;
        opt->add_result(item.inputs);
        opt->run_callback();
    }
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Besov counterexample toolkit"};
    app.set_version_flag("--version", version_line());
    app.require_subcommand(1);
    std::function<int()> action;

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a dyadic sequence and write it as CSV");
    construct->add_option("kind", ca.kind, "zeta, lambda or weighted")
        ->required()
        ->check(CLI::IsMember({"zeta", "lambda", "weighted"}));
    construct->add_option("--p", ca.p, "Inner exponent");
    construct->add_option("--q", ca.q, "Outer exponent (inf allowed)");
    construct->add_option("--psi", ca.psi, "Weight, e.g. logpow:c=1/4,b=-1");
    construct->add_option("--jmax", ca.jmax, "Deepest level");
    construct->add_option("-o,--output", ca.out, "CSV output path");
    construct->callback([&] { action = [&] { return run_construct(ca); }; });

    MeasureArgs ma;
    auto* measure = app.add_subcommand("measure", "Estimate a norm of a grid function");
    measure->add_option("norm", ma.norm, "besov, gbesov, bmo, weaklp or holder")
        ->required()
        ->check(CLI::IsMember({"besov", "gbesov", "bmo", "weaklp", "holder"}));
    measure->add_option("--input", ma.input, "Grid CSV");
    measure->add_flag("--bump", ma.bump, "Sample the product bump on [-2,2]^dim");
    measure->add_option("--constant", ma.constant, "Sample a constant on [0,1]^dim");
    measure->add_option("--dim", ma.dim, "Dimension for --bump/--constant");
    measure->add_option("--level", ma.level, "Grid level for --bump/--constant");
    measure->add_option("--s", ma.s, "Smoothness (Holder exponent for holder)");
    measure->add_option("--p", ma.p);
    measure->add_option("--q", ma.q);
    measure->add_option("--psi", ma.psi, "Weight for gbesov");
    measure->add_option("--M", ma.M, "Difference order (0: floor(s)+1)");
    measure->add_option("--jlo", ma.jlo);
    measure->add_option("--jhi", ma.jhi, "Finest shell (default level-2)");
    measure->add_option("--r", ma.r, "Weak-L^r exponent");
    measure->add_option("--floor", ma.floor, "Finest BMO window level (default level-1)");
    measure->add_option("--kernel", ma.kernel)->check(CLI::IsMember({"serial", "omp"}));
    measure->add_option("-o,--output", ma.out, "Report path (.json or CSV)");
    measure->callback([&] { action = [&] { return run_measure(ma); }; });

    besovctl::VerifyOptions vo;
    VerifyOutputs vout;
    auto* verify = app.add_subcommand("verify", "Run a verification scenario");
    verify->require_subcommand(1);
    for (const std::string& name : besovctl::scenario_names()) {
        auto* sc = verify->add_subcommand(name);
        auto* cfg = sc->add_option("--config", "key = value file");
        sc->add_option("--p", vo.p);
        sc->add_option("--q", vo.q);
        sc->add_option("--s", vo.s);
        sc->add_option("--psi", vo.psi, "Target weight");
        sc->add_option("--mode", vo.mode, "embedding: weaklp, bmo or holder");
        sc->add_option("--samples", vo.samples);
        sc->add_option("--jmax", vo.jmax);
        sc->add_option("--seed", vo.seed);
        sc->add_flag("--grid", vo.grid, "Also compare grid seminorms of slices");
        sc->add_option("--report", vout.report, "JSON report path");
        sc->add_option("--plot-data", vout.plot, "gnuplot .dat of witness curves");
        sc->add_option("--curves", vout.curves, "CSV of witness curves");
        sc->callback([&, name, sc, cfg] {
            action = [&, name, sc, cfg] {
                if (cfg->count() > 0) apply_config(sc, cfg->as<std::string>());
                return run_verify(name, vo, vout);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    return guarded(action);
}
