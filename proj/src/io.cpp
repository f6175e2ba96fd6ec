#include "besov/io.hpp"

#include "besov/error.hpp"
#include "besov/parse.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace besov {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

// Next non-comment, non-blank line; false at end of stream.
bool next_data_line(std::istream& is, std::string& line, std::vector<std::string>* comments = nullptr) {
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (comments) comments->push_back(line.substr(1));
            continue;
        }
        return true;
    }
    return false;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split(s, ',')) out.push_back(parse_real(item));
    return out;
}

} // namespace

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_comment_header(std::ostream& os, const std::vector<std::string>& lines) {
    for (const std::string& l : lines) os << "# " << l << '\n';
}

void write_sequence_csv(std::ostream& os, const DyadicSequence& seq) {
    os << "# max_level=" << seq.max_level() << '\n';
    os << "level,start,length,value\n";
    for (const LevelRun& r : seq.runs())
        os << r.level << ',' << r.start << ',' << r.length << ',' << format_real(r.value) << '\n';
}

DyadicSequence read_sequence_csv(std::istream& is) {
    std::string line;
    std::vector<std::string> comments;
    if (!next_data_line(is, line, &comments)) throw IoError("sequence file is empty");
    if (line != "level,start,length,value") throw IoError("unexpected sequence header '" + line + "'");
    std::vector<LevelRun> runs;
    int top = 0;
    while (next_data_line(is, line, &comments)) {
        auto f = split(line, ',');
        if (f.size() != 4) throw IoError("sequence row needs 4 fields: '" + line + "'");
        try {
            LevelRun r;
            r.level = static_cast<int>(parse_int(f[0]));
            long long st = parse_int(f[1]), len = parse_int(f[2]);
            if (st < 0 || len < 0) throw IoError("negative start/length in '" + line + "'");
            r.start = static_cast<std::uint64_t>(st);
            r.length = static_cast<std::uint64_t>(len);
            r.value = parse_real(f[3]);
            top = std::max(top, r.level);
            runs.push_back(r);
        } catch (const ParameterError& e) {
            throw IoError(std::string("bad sequence row: ") + e.what());
        }
    }
    for (const std::string& c : comments) {
        auto pos = c.find("max_level=");
        if (pos != std::string::npos) top = std::max(top, static_cast<int>(parse_int(c.substr(pos + 10))));
    }
    return DyadicSequence::from_runs(runs, top);
}

void write_coeffs_csv(std::ostream& os, const QuarkCoeffs& coeffs) {
    const int N = coeffs.dim();
    os << "# decay=" << format_real(coeffs.decay()) << '\n';
    for (int i = 1; i <= N; ++i) os << "beta" << i << ',';
    os << "nu";
    for (int i = 1; i <= N; ++i) os << ",m" << i;
    os << ",value\n";
    for (const auto& [idx, v] : coeffs.entries()) {
        for (int b : idx.beta) os << b << ',';
        os << idx.nu;
        for (auto m : idx.m) os << ',' << m;
        os << ',' << format_real(v) << '\n';
    }
}

QuarkCoeffs read_coeffs_csv(std::istream& is) {
    std::string line;
    std::vector<std::string> comments;
    if (!next_data_line(is, line, &comments)) throw IoError("coefficient file is empty");
    auto head = split(line, ',');
    if (head.size() < 4 || (head.size() - 2) % 2 != 0 || head.back() != "value")
        throw IoError("unexpected coefficient header '" + line + "'");
    const int N = static_cast<int>((head.size() - 2) / 2);
    double decay = 0.0;
    for (const std::string& c : comments) {
        auto pos = c.find("decay=");
        if (pos != std::string::npos) decay = parse_real(c.substr(pos + 6));
    }
    QuarkCoeffs out(N, decay);
    while (next_data_line(is, line)) {
        auto f = split(line, ',');
        if (f.size() != head.size()) throw IoError("coefficient row has wrong width: '" + line + "'");
        try {
            QuarkIndex idx;
            for (int i = 0; i < N; ++i) idx.beta.push_back(static_cast<int>(parse_int(f[i])));
            idx.nu = static_cast<int>(parse_int(f[N]));
            for (int i = 0; i < N; ++i) idx.m.push_back(parse_int(f[N + 1 + i]));
            out.add(idx, parse_real(f.back()));
        } catch (const ParameterError& e) {
            throw IoError(std::string("bad coefficient row: ") + e.what());
        }
    }
    return out;
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
        return s;
    };
    os << "# level=" << g.level() << '\n';
    os << "# lower=" << join(g.box().lower) << '\n';
    os << "# upper=" << join(g.box().upper) << '\n';
    os << "value\n";
    for (double v : g.values()) os << format_real(v) << '\n';
}

GridFunction read_grid_csv(std::istream& is) {
    std::string line;
    std::vector<std::string> comments;
    if (!next_data_line(is, line, &comments)) throw IoError("grid file is empty");
    if (line != "value") throw IoError("unexpected grid header '" + line + "'");
    int level = -1;
    Box box;
    try {
        for (std::string c : comments) {
            while (!c.empty() && c[0] == ' ') c.erase(0, 1);
            if (c.rfind("level=", 0) == 0) level = static_cast<int>(parse_int(c.substr(6)));
            if (c.rfind("lower=", 0) == 0) box.lower = parse_list(c.substr(6));
            if (c.rfind("upper=", 0) == 0) box.upper = parse_list(c.substr(6));
        }
    } catch (const ParameterError& e) {
        throw IoError(std::string("bad grid header: ") + e.what());
    }
    if (level < 0 || box.lower.empty()) throw IoError("grid file lacks level/lower/upper header lines");
    GridFunction g(box, level);
    std::size_t i = 0;
    while (next_data_line(is, line)) {
        if (i >= g.size()) throw IoError("grid file has too many values");
        try {
            g[i++] = parse_real(line);
        } catch (const ParameterError& e) {
            throw IoError(std::string("bad grid value: ") + e.what());
        }
    }
    if (i != g.size()) throw IoError("grid file has " + std::to_string(i) + " values, expected " + std::to_string(g.size()));
    return g;
}

std::string norm_report_json(const NormReport& rep, const std::vector<std::pair<std::string, std::string>>& config) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    j["lp"] = rep.lp;
    j["shells"] = nlohmann::ordered_json::array();
    for (const ShellEntry& e : rep.shells) j["shells"].push_back({{"j", e.j}, {"value", e.value}, {"modulus", e.modulus}});
    j["seminorm"] = rep.seminorm;
    j["total"] = rep.total;
    j["flags"] = rep.flags;
    return j.dump(2);
}

void write_norm_report_csv(std::ostream& os, const NormReport& rep) {
    os << "j,value,modulus\n";
    for (const ShellEntry& e : rep.shells)
        os << e.j << ',' << format_real(e.value) << ',' << format_real(e.modulus) << '\n';
    os << "# lp=" << format_real(rep.lp) << '\n';
    os << "# seminorm=" << format_real(rep.seminorm) << '\n';
    os << "# total=" << format_real(rep.total) << '\n';
}

} // namespace besov
