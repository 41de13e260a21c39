#include "fsilab/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fsilab {
namespace {

// shortest representation that round-trips exactly
std::string shortest(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Parser {
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
    }

    double num(const std::string& v) const {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters after number '" + v + "'");
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
    }

    int integer(const std::string& v) const {
        const double x = num(v);
        const int i = static_cast<int>(x);
        if (static_cast<double>(i) != x) fail("expected an integer, got '" + v + "'");
        return i;
    }
};

} // namespace

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::Lambda: return "lambda";
        case RunMode::Pi: return "pi";
        case RunMode::Lemmas: return "lemmas";
        case RunMode::Compat: return "compat";
        case RunMode::Contraction: return "contraction";
        case RunMode::Mms: return "mms";
    }
    return "?";
}

ChannelGeometry RunConfig::geometry() const {
    return ChannelGeometry(L1, L2, L3, N1, N2, M_lo, M_up, M_el);
}

void RunConfig::validate() const {
    geometry(); // layer/grid checks
    if (lambda <= 0.0 || mu <= 0.0) throw ConfigError("viscosities must satisfy lambda, mu > 0");
    if (pressure_law != "identity")
        throw ConfigError("pressure_law must be 'identity': only q(R) = R is supported");
    iter.validate();
    if (strength <= 0.0) throw ConfigError("strength must be positive");
    if (contraction_T <= 0.0) throw ConfigError("contraction_T must be positive");
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    os << "[geometry]\n"
       << "L1 = " << shortest(L1) << "\nL2 = " << shortest(L2) << "\nL3 = " << shortest(L3)
       << "\nN1 = " << N1 << "\nN2 = " << N2 << "\nM_lo = " << M_lo << "\nM_up = " << M_up
       << "\nM_el = " << M_el << "\n\n[physics]\nlambda = " << shortest(lambda)
       << "\nmu = " << shortest(mu) << "\npressure_law = " << pressure_law
       << "\n\n[iteration]\ns = " << shortest(iter.s) << "\nT = " << shortest(iter.T)
       << "\ndt = " << shortest(iter.dt) << "\ntol = " << shortest(iter.tol)
       << "\nmax_iter = " << iter.max_iter << "\nM_report = " << shortest(iter.M_report)
       << "\nR_floor = " << shortest(iter.R_floor)
       << "\nJ_floor = " << shortest(iter.J_floor) << "\n\n[run]\nmode = "
       << run_mode_name(mode) << "\nseed = " << seed << "\noutput_dir = " << output_dir
       << "\nstrength = " << shortest(strength)
       << "\ncontraction_T = " << shortest(contraction_T)
       << "\nallow_incompatible = " << (allow_incompatible ? "true" : "false") << "\n";
    return os.str();
}

std::string default_config_text() { return RunConfig{}.echo(); }

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    Parser p{origin, 0};
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        ++p.line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') p.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "physics" && section != "iteration" &&
                section != "run")
                p.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) p.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty()) p.fail("empty value for key '" + key + "'");

        if (section == "geometry") {
            if (key == "L1") cfg.L1 = p.num(val);
            else if (key == "L2") cfg.L2 = p.num(val);
            else if (key == "L3") cfg.L3 = p.num(val);
            else if (key == "N1") cfg.N1 = p.integer(val);
            else if (key == "N2") cfg.N2 = p.integer(val);
            else if (key == "M_lo") cfg.M_lo = p.integer(val);
            else if (key == "M_up") cfg.M_up = p.integer(val);
            else if (key == "M_el") cfg.M_el = p.integer(val);
            else p.fail("unknown key '" + key + "' in [geometry]");
        } else if (section == "physics") {
            if (key == "lambda") cfg.lambda = p.num(val);
            else if (key == "mu") cfg.mu = p.num(val);
            else if (key == "pressure_law") cfg.pressure_law = val;
            else p.fail("unknown key '" + key + "' in [physics]");
        } else if (section == "iteration") {
            if (key == "s") cfg.iter.s = p.num(val);
            else if (key == "T") cfg.iter.T = p.num(val);
            else if (key == "dt") cfg.iter.dt = p.num(val);
            else if (key == "tol") cfg.iter.tol = p.num(val);
            else if (key == "max_iter") cfg.iter.max_iter = p.integer(val);
            else if (key == "M_report") cfg.iter.M_report = p.num(val);
            else if (key == "R_floor") cfg.iter.R_floor = p.num(val);
            else if (key == "J_floor") cfg.iter.J_floor = p.num(val);
            else p.fail("unknown key '" + key + "' in [iteration]");
        } else if (section == "run") {
            if (key == "mode") {
                if (val == "lambda") cfg.mode = RunMode::Lambda;
                else if (val == "pi") cfg.mode = RunMode::Pi;
                else if (val == "lemmas") cfg.mode = RunMode::Lemmas;
                else if (val == "compat") cfg.mode = RunMode::Compat;
                else if (val == "contraction") cfg.mode = RunMode::Contraction;
                else if (val == "mms") cfg.mode = RunMode::Mms;
                else p.fail("unknown mode '" + val + "'");
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(p.num(val));
            } else if (key == "output_dir") {
                cfg.output_dir = val;
            } else if (key == "strength") {
                cfg.strength = p.num(val);
            } else if (key == "contraction_T") {
                cfg.contraction_T = p.num(val);
            } else if (key == "allow_incompatible") {
                if (val == "true") cfg.allow_incompatible = true;
                else if (val == "false") cfg.allow_incompatible = false;
                else p.fail("expected true/false for allow_incompatible");
            } else {
                p.fail("unknown key '" + key + "' in [run]");
            }
        } else {
            p.fail("key '" + key + "' outside any section");
        }
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace fsilab
