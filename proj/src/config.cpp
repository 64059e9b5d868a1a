#include "pklab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "pklab/peakon.hpp"

namespace pklab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Numeric literal inside an initial-data expression. Plain C literals plus
// the 'e' suffix meaning Euler's constant: "-20e" = -20*e, bare "e" = e.
double parse_initial_number(const std::string& raw, const std::string& field) {
    const std::string tok = trim(raw);
    if (tok.empty())
        throw ConfigError("initial_data: empty number for '" + field + "'");
    if (tok == "e" || tok == "+e") return std::numbers::e;
    if (tok == "-e") return -std::numbers::e;
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ConfigError("initial_data: '" + tok + "' is not a number (field '" + field + "')");
    }
    if (pos == tok.size()) return value;
    if (pos == tok.size() - 1 && tok.back() == 'e') return value * std::numbers::e;
    throw ConfigError("initial_data: trailing characters in number '" + tok + "'");
}

double parse_plain_number(const std::string& raw, const std::string& field) {
    const std::string tok = trim(raw);
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ConfigError(field + ": '" + tok + "' is not a number");
    }
    if (pos != tok.size())
        throw ConfigError(field + ": trailing characters in number '" + tok + "'");
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "name(arg, arg, ...)" -> (name, args); args may be "key=value" or positional
InitialData parse_initial_data(const std::string& expr) {
    const std::string text = trim(expr);
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw ConfigError("initial_data: expected generator(name=value, ...), got '" + text + "'");
    const std::string name = trim(text.substr(0, open));
    const std::string body = text.substr(open + 1, text.size() - open - 2);

    InitialData init;
    std::vector<std::string> positional_names;
    if (name == "bump_n0" || name == "scaled_bump_n0" || name == "bump") {
        init.kind = InitialData::Kind::bump_n0;
        positional_names = {"center", "scale", "amplitude"};
    } else if (name == "bump_v0") {
        init.kind = InitialData::Kind::bump_v0;
        positional_names = {"center", "scale", "amplitude"};
    } else if (name == "peakon") {
        init.kind = InitialData::Kind::peakon;
        positional_names = {"a1", "a2"};
    } else if (name == "superposition") {
        init.kind = InitialData::Kind::superposition;
    } else {
        throw ConfigError("initial_data: unknown generator '" + name +
                          "' (expected bump_n0, bump_v0, peakon or superposition)");
    }

    if (trim(body).empty()) {
        if (init.kind == InitialData::Kind::superposition)
            throw ConfigError("initial_data: superposition needs at least one weight@position term");
        return init;
    }

    std::size_t positional = 0;
    for (const std::string& piece : split(body, ',')) {
        const std::string arg = trim(piece);
        if (arg.empty()) throw ConfigError("initial_data: empty argument in '" + text + "'");
        if (init.kind == InitialData::Kind::superposition) {
            const auto at = arg.find('@');
            if (at == std::string::npos)
                throw ConfigError("initial_data: superposition terms are weight@position, got '" +
                                  arg + "'");
            init.weights.push_back(parse_initial_number(arg.substr(0, at), "weight"));
            init.positions.push_back(parse_initial_number(arg.substr(at + 1), "position"));
            continue;
        }
        std::string key, value;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            key = trim(arg.substr(0, eq));
            value = arg.substr(eq + 1);
        } else {
            if (positional >= positional_names.size())
                throw ConfigError("initial_data: too many positional arguments in '" + text + "'");
            key = positional_names[positional++];
            value = arg;
        }
        const double num = parse_initial_number(value, key);
        if (key == "center") init.center = num;
        else if (key == "scale") init.scale = num;
        else if (key == "amplitude") init.amplitude = num;
        else if (key == "a1") init.a1 = num;
        else if (key == "a2") init.a2 = num;
        else throw ConfigError("initial_data: unknown argument '" + key + "' for " + name);
    }
    if ((init.kind == InitialData::Kind::bump_n0 || init.kind == InitialData::Kind::bump_v0) &&
        !(init.scale > 0))
        throw ConfigError("initial_data: scale must be positive");
    return init;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string InitialData::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::bump_n0:
            os << "bump_n0(center=" << format_number(center) << ", scale=" << format_number(scale)
               << ", amplitude=" << format_number(amplitude) << ")";
            break;
        case Kind::bump_v0:
            os << "bump_v0(center=" << format_number(center) << ", scale=" << format_number(scale)
               << ", amplitude=" << format_number(amplitude) << ")";
            break;
        case Kind::peakon:
            os << "peakon(a1=" << format_number(a1) << ", a2=" << format_number(a2) << ")";
            break;
        case Kind::superposition: {
            os << "superposition(";
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (i) os << ", ";
                os << format_number(weights[i]) << "@" << format_number(positions[i]);
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

Field build_initial_v(const InitialData& init, const GridPtr& grid,
                      const HelmholtzParams& params) {
    switch (init.kind) {
        case InitialData::Kind::bump_n0: {
            const Field n0 = sample(grid, [&](double x) {
                return bump(x, init.center, init.scale, init.amplitude);
            });
            return v_from_n(n0, params);
        }
        case InitialData::Kind::bump_v0:
            return sample(grid, [&](double x) {
                return bump(x, init.center, init.scale, init.amplitude);
            });
        case InitialData::Kind::peakon:
            return sample(grid, exact_peakon({init.a1, init.a2, params.beta0}, 0.0));
        case InitialData::Kind::superposition:
            return sample(grid,
                          peakon_superposition(init.weights, init.positions, params.beta0));
    }
    throw ConfigError("build_initial_v: unhandled initial data kind");
}

SimConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::vector<std::string> unknown;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const char* known[] = {"beta0",        "L",           "n_points",   "t_end",
                                  "scheme",       "cfl_safety",  "blowup_factor",
                                  "initial_data", "snapshot_dt", "diag_every", "track_crest",
                                  "dt_min",       "assume_v_inf", "assume_vx_inf"};
    for (const auto& [key, value] : kv) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            unknown.push_back(key);
    }
    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw ConfigError(msg);
    }

    SimConfig cfg;
    if (!kv.count("initial_data")) throw ConfigError("config: initial_data missing");
    cfg.initial = parse_initial_data(kv.at("initial_data"));

    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("beta0")) {
        cfg.params.beta0 = parse_plain_number(*v, "beta0");
        if (cfg.params.beta0 == 0) throw ConfigError("beta0 must be nonzero");
    }
    if (auto* v = get("L")) {
        cfg.half_width = parse_plain_number(*v, "L");
        if (!(cfg.half_width > 0)) throw ConfigError("L must be positive");
    }
    if (auto* v = get("n_points")) {
        const double num = parse_plain_number(*v, "n_points");
        if (num < 8 || num != std::floor(num))
            throw ConfigError("n_points must be an integer power of two >= 8");
        cfg.n_points = static_cast<std::size_t>(num);
        if (cfg.n_points & (cfg.n_points - 1))
            throw ConfigError("n_points must be an integer power of two >= 8");
    }
    if (auto* v = get("t_end")) {
        cfg.t_end = parse_plain_number(*v, "t_end");
        if (!(cfg.t_end > 0)) throw ConfigError("t_end must be positive");
    }
    if (auto* v = get("scheme")) {
        if (*v == "euler_upwind") cfg.scheme = Scheme::euler_upwind;
        else if (*v == "rk4_spectral") cfg.scheme = Scheme::rk4_spectral;
        else throw ConfigError("scheme must be euler_upwind or rk4_spectral");
    }
    if (auto* v = get("cfl_safety")) {
        cfg.cfl_safety = parse_plain_number(*v, "cfl_safety");
        if (!(cfg.cfl_safety > 0) || cfg.cfl_safety > 1)
            throw ConfigError("cfl_safety must be in (0,1]");
    }
    if (auto* v = get("blowup_factor")) {
        cfg.blowup_factor = parse_plain_number(*v, "blowup_factor");
        if (!(cfg.blowup_factor > 1)) throw ConfigError("blowup_factor must be > 1");
    }
    if (auto* v = get("snapshot_dt")) {
        cfg.snapshot_dt = parse_plain_number(*v, "snapshot_dt");
        if (cfg.snapshot_dt < 0) throw ConfigError("snapshot_dt must be >= 0");
    }
    if (auto* v = get("diag_every")) {
        const double num = parse_plain_number(*v, "diag_every");
        if (num < 1 || num != std::floor(num))
            throw ConfigError("diag_every must be a positive integer");
        cfg.diag_every = static_cast<std::size_t>(num);
    }
    if (auto* v = get("track_crest")) {
        if (*v == "true" || *v == "1") cfg.track_crest = true;
        else if (*v == "false" || *v == "0") cfg.track_crest = false;
        else throw ConfigError("track_crest must be true or false");
    }
    if (auto* v = get("dt_min")) {
        cfg.dt_min = parse_plain_number(*v, "dt_min");
        if (!(cfg.dt_min > 0)) throw ConfigError("dt_min must be positive");
    }
    if (auto* v = get("assume_v_inf")) {
        cfg.assume_v_inf = parse_initial_number(*v, "assume_v_inf");
        if (cfg.assume_v_inf < 0) throw ConfigError("assume_v_inf must be >= 0");
    }
    if (auto* v = get("assume_vx_inf")) {
        cfg.assume_vx_inf = parse_initial_number(*v, "assume_vx_inf");
        if (cfg.assume_vx_inf < 0) throw ConfigError("assume_vx_inf must be >= 0");
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const SimConfig& config) {
    std::ostringstream os;
    os << "beta0 = " << format_number(config.params.beta0) << "\n";
    os << "L = " << format_number(config.half_width) << "\n";
    os << "n_points = " << config.n_points << "\n";
    os << "initial_data = " << config.initial.describe() << "\n";
    os << "t_end = " << format_number(config.t_end) << "\n";
    os << "scheme = " << to_string(config.scheme) << "\n";
    os << "cfl_safety = " << format_number(config.cfl_safety) << "\n";
    os << "blowup_factor = " << format_number(config.blowup_factor) << "\n";
    os << "snapshot_dt = " << format_number(config.snapshot_dt) << "\n";
    os << "diag_every = " << config.diag_every << "\n";
    os << "track_crest = " << (config.track_crest ? "true" : "false") << "\n";
    os << "dt_min = " << format_number(config.dt_min) << "\n";
    if (config.assume_v_inf > 0) os << "assume_v_inf = " << format_number(config.assume_v_inf) << "\n";
    if (config.assume_vx_inf > 0)
        os << "assume_vx_inf = " << format_number(config.assume_vx_inf) << "\n";
    return os.str();
}

const char* to_string(Scheme scheme) {
    return scheme == Scheme::euler_upwind ? "euler_upwind" : "rk4_spectral";
}

} // namespace pklab
