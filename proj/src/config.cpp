#include "sqg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sqg/io.hpp"

namespace sqg {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0' && !s.empty();
}

bool parse_int(const std::string& s, long long& out) {
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end && *end == '\0' && !s.empty();
}

bool parse_uint(const std::string& s, std::uint64_t& out) {
    char* end = nullptr;
    out = std::strtoull(s.c_str(), &end, 10);
    return end && *end == '\0' && !s.empty() && s[0] != '-';
}

std::vector<double> parse_double_list(const std::string& s, bool& ok) {
    std::vector<double> values;
    ok = true;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        double v;
        if (!parse_double(item, v)) {
            ok = false;
            return values;
        }
        values.push_back(v);
    }
    return values;
}

std::string render_double_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "equation",      "galerkin_n",    "nu",           "kappa",
        "dt",            "t_final",       "scheme",       "theta_family",
        "theta_radii",   "theta_alpha",   "ensemble_size", "seed",
        "delta",         "deviation_epsilon", "record_times", "output_dir",
        "initial_data",  "threads",       "nonlinear",    "snapshot_times"};
    return keys;
}

bool stochastic_command(Command cmd) { return cmd == Command::Simulate || cmd == Command::Scaling; }

std::string default_scheme(Command cmd) {
    return stochastic_command(cmd) || cmd == Command::Verify ? "ExponentialEM" : "ExponentialRK2";
}

// ---- initial-data expression grammar ---------------------------------------

struct Term {
    double scale = 1.0;
    std::string atom;
};

std::vector<Term> split_terms(const std::string& expr, std::vector<Diagnostic>& errors, int line) {
    std::vector<Term> terms;
    std::size_t pos = 0;
    while (pos <= expr.size()) {
        // split on '+' at depth 0 (parentheses shield mode tuples)
        int depth = 0;
        std::size_t end = pos;
        while (end < expr.size() && (expr[end] != '+' || depth > 0)) {
            if (expr[end] == '(') ++depth;
            if (expr[end] == ')') --depth;
            ++end;
        }
        std::string piece = trim(expr.substr(pos, end - pos));
        if (piece.empty()) {
            errors.push_back({line, "empty term in initial_data expression"});
            return terms;
        }
        Term t;
        const auto star = piece.find('*');
        if (star != std::string::npos && piece.find('(') > star) {
            if (!parse_double(trim(piece.substr(0, star)), t.scale)) {
                errors.push_back({line, "bad scalar factor in initial_data: '" + piece + "'"});
                return terms;
            }
            piece = trim(piece.substr(star + 1));
        }
        t.atom = piece;
        terms.push_back(t);
        if (end >= expr.size()) break;
        pos = end + 1;
    }
    return terms;
}

SpectralScalarField build_expression(const std::string& expr, int truncation,
                                     std::vector<Diagnostic>& errors, int line) {
    SpectralScalarField field(truncation);
    for (const Term& t : split_terms(expr, errors, line)) {
        const std::string& a = t.atom;
        if (a == "zero") continue;
        if (a.rfind("e(", 0) == 0 && a.back() == ')') {
            const std::string inner = a.substr(2, a.size() - 3);
            const auto comma = inner.find(',');
            long long k1, k2;
            if (comma == std::string::npos || !parse_int(trim(inner.substr(0, comma)), k1) ||
                !parse_int(trim(inner.substr(comma + 1)), k2)) {
                errors.push_back({line, "bad mode atom in initial_data: '" + a + "'"});
                continue;
            }
            const Wavevector k{static_cast<int>(k1), static_cast<int>(k2)};
            if (k.is_zero() || !field.in_ball(k)) {
                errors.push_back({line, "mode outside 0 < |k| <= galerkin_n: '" + a + "'"});
                continue;
            }
            field.add_coeff(k, t.scale);
            continue;
        }
        if (a.rfind("random(", 0) == 0 && a.back() == ')') {
            bool ok = true;
            const auto args = parse_double_list(a.substr(7, a.size() - 8), ok);
            if (!ok || args.size() < 2 || args.size() > 3) {
                errors.push_back({line, "random(radius,seed[,amplitude]) expected: '" + a + "'"});
                continue;
            }
            const double amplitude = args.size() == 3 ? args[2] : 1.0;
            SpectralScalarField r = random_field(
                truncation, args[0], static_cast<std::uint64_t>(args[1]), amplitude);
            r *= t.scale;
            field += r;
            continue;
        }
        if (a.size() > 4 && (a.substr(a.size() - 4) == ".csv" || a.substr(a.size() - 4) == ".fld")) {
            try {
                const std::string bytes = read_file(a);
                SpectralScalarField loaded =
                    a.substr(a.size() - 4) == ".csv"
                        ? galerkin_project(field_from_csv(bytes), truncation)
                        : field_from_container(bytes, truncation);
                loaded *= t.scale;
                field += loaded;
            } catch (const std::exception& e) {
                errors.push_back({line, std::string("cannot load initial_data file: ") + e.what()});
            }
            continue;
        }
        errors.push_back({line, "unknown initial_data atom: '" + a + "'"});
    }
    return field;
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "limit") return Command::Limit;
    if (name == "scaling") return Command::Scaling;
    if (name == "verify") return Command::Verify;
    throw ConfigError({{0, "unknown command: " + name}});
}

std::string command_name(Command cmd) {
    switch (cmd) {
        case Command::Simulate: return "simulate";
        case Command::Limit: return "limit";
        case Command::Scaling: return "scaling";
        case Command::Verify: return "verify";
    }
    return "?";
}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&diagnostics] {
          std::string msg = "configuration error";
          for (const auto& d : diagnostics) {
              msg += "\n  ";
              if (d.line > 0) msg += "line " + std::to_string(d.line) + ": ";
              msg += d.message;
          }
          return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

RunConfig parse_config(const std::string& text, Command command) {
    std::vector<Diagnostic> errors;
    RunConfig cfg;
    cfg.scheme = default_scheme(command);

    std::map<std::string, std::pair<int, std::string>> kv; // key -> (line, value)
    {
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back({lineno, "expected 'key = value': '" + line + "'"});
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
                errors.push_back({lineno, "unknown key: '" + key + "'"});
                continue;
            }
            if (kv.count(key)) {
                errors.push_back({lineno, "duplicate key: '" + key + "'"});
                continue;
            }
            kv[key] = {lineno, value};
        }
    }

    auto take = [&](const std::string& key) -> std::pair<int, std::string>* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto want_double = [&](const std::string& key, double& out) {
        if (auto* e = take(key)) {
            if (!parse_double(e->second, out))
                errors.push_back({e->first, key + " must be a number, got '" + e->second + "'"});
            return true;
        }
        return false;
    };
    auto want_int = [&](const std::string& key, long long& out) {
        if (auto* e = take(key)) {
            if (!parse_int(e->second, out))
                errors.push_back({e->first, key + " must be an integer, got '" + e->second + "'"});
            return true;
        }
        return false;
    };

    // equation
    if (auto* e = take("equation")) {
        if (e->second == "sqg")
            cfg.equation = Equation::Sqg;
        else if (e->second == "boussinesq")
            cfg.equation = Equation::Boussinesq;
        else
            errors.push_back({e->first, "equation must be 'sqg' or 'boussinesq'"});
    } else if (command != Command::Verify) {
        errors.push_back({0, "missing required key: equation"});
    }

    long long n = cfg.galerkin_n;
    if (want_int("galerkin_n", n)) {
        if (n < 1 || n > 4096)
            errors.push_back({take("galerkin_n")->first, "galerkin_n must lie in [1, 4096]"});
        else
            cfg.galerkin_n = static_cast<int>(n);
    } else if (command != Command::Verify) {
        errors.push_back({0, "missing required key: galerkin_n"});
    }

    if (want_double("nu", cfg.nu)) {
        if (cfg.nu < 0.0) errors.push_back({take("nu")->first, "nu must be >= 0"});
    } else if (command != Command::Verify) {
        errors.push_back({0, "missing required key: nu"});
    }

    if (auto* e = take("kappa")) {
        if (cfg.equation == Equation::Sqg)
            errors.push_back({e->first, "kappa applies to the Boussinesq system only"});
        else if (!parse_double(e->second, cfg.kappa) || cfg.kappa < 0.0)
            errors.push_back({e->first, "kappa must be a number >= 0"});
    }

    if (want_double("dt", cfg.dt)) {
        if (cfg.dt <= 0.0) errors.push_back({take("dt")->first, "dt must be positive"});
    } else if (command != Command::Verify) {
        errors.push_back({0, "missing required key: dt"});
    }

    if (want_double("t_final", cfg.t_final)) {
        if (cfg.t_final <= 0.0)
            errors.push_back({take("t_final")->first, "t_final must be positive"});
        else if (cfg.dt > 0.0) {
            const auto steps = std::llround(cfg.t_final / cfg.dt);
            if (steps < 1 ||
                std::abs(steps * cfg.dt - cfg.t_final) > 1e-9 * std::max(1.0, cfg.t_final))
                errors.push_back(
                    {take("t_final")->first, "t_final must be an integer multiple of dt"});
        }
    } else if (command != Command::Verify) {
        errors.push_back({0, "missing required key: t_final"});
    }

    if (auto* e = take("scheme")) {
        static const std::vector<std::string> stochastic = {"ItoEulerMaruyama",
                                                            "StratonovichHeun", "ExponentialEM"};
        static const std::vector<std::string> deterministic = {"ExponentialRK2", "ExplicitEuler"};
        const auto& allowed = stochastic_command(command) ? stochastic : deterministic;
        if (std::find(allowed.begin(), allowed.end(), e->second) == allowed.end()) {
            std::string list;
            for (const auto& s : allowed) list += (list.empty() ? "" : " | ") + s;
            errors.push_back({e->first, "scheme for this command must be one of: " + list});
        } else {
            cfg.scheme = e->second;
        }
    }

    if (auto* e = take("theta_family")) {
        if (e->second != "cutoff" && e->second != "power")
            errors.push_back({e->first, "theta_family must be 'cutoff' or 'power'"});
        else
            cfg.theta_family = e->second;
    }

    if (auto* e = take("theta_radii")) {
        bool ok = true;
        cfg.theta_radii = parse_double_list(e->second, ok);
        if (!ok || cfg.theta_radii.empty())
            errors.push_back({e->first, "theta_radii must be a comma list of numbers"});
        else
            for (double r : cfg.theta_radii)
                if (r < 1.0) errors.push_back({e->first, "theta radii must be >= 1"});
    }

    if (auto* e = take("theta_alpha")) {
        if (cfg.theta_family != "power")
            errors.push_back({e->first, "theta_alpha applies to the power family only"});
        else if (!parse_double(e->second, cfg.theta_alpha) || cfg.theta_alpha < 0.0)
            errors.push_back({e->first, "theta_alpha must be a number >= 0"});
    }

    long long m = cfg.ensemble_size;
    if (want_int("ensemble_size", m)) {
        const long long min = command == Command::Scaling ? 2 : 1;
        if (m < min)
            errors.push_back({take("ensemble_size")->first,
                              "ensemble_size must be >= " + std::to_string(min)});
        else
            cfg.ensemble_size = static_cast<int>(m);
    }

    if (auto* e = take("seed")) {
        if (!parse_uint(e->second, cfg.seed))
            errors.push_back({e->first, "seed must be a nonnegative integer"});
    }

    if (want_double("delta", cfg.delta)) {
        if (cfg.delta <= 0.0 || cfg.delta >= 1.0)
            errors.push_back({take("delta")->first, "delta must lie in the open interval (0,1)"});
    }

    if (auto* e = take("deviation_epsilon")) {
        if (e->second == "auto")
            cfg.deviation_epsilon = 0.0;
        else if (!parse_double(e->second, cfg.deviation_epsilon) || cfg.deviation_epsilon <= 0.0)
            errors.push_back({e->first, "deviation_epsilon must be positive or 'auto'"});
    }

    long long rt = cfg.record_times;
    if (want_int("record_times", rt)) {
        if (rt < 2)
            errors.push_back({take("record_times")->first, "record_times must be >= 2"});
        else
            cfg.record_times = static_cast<int>(rt);
    }

    if (auto* e = take("output_dir")) cfg.output_dir = e->second;

    if (auto* e = take("initial_data")) {
        cfg.initial_data = e->second;
    } else {
        cfg.initial_data = cfg.equation == Equation::Boussinesq
                               ? "xi: e(1,0); omega: e(0,1)"
                               : "e(1,0)+e(0,1)";
    }

    long long threads = cfg.threads;
    if (want_int("threads", threads)) {
        if (threads < 0 || threads > 1024)
            errors.push_back({take("threads")->first, "threads must lie in [0, 1024]"});
        else
            cfg.threads = static_cast<int>(threads);
    }

    if (auto* e = take("nonlinear")) {
        if (e->second == "on")
            cfg.nonlinear = true;
        else if (e->second == "off")
            cfg.nonlinear = false;
        else
            errors.push_back({e->first, "nonlinear must be 'on' or 'off'"});
    }

    if (auto* e = take("snapshot_times")) {
        bool ok = true;
        cfg.snapshot_times = parse_double_list(e->second, ok);
        if (!ok) errors.push_back({e->first, "snapshot_times must be a comma list of numbers"});
    }

    // Validate the initial-data expression at parse time (syntax and modes).
    if (errors.empty() && command != Command::Verify) {
        const int line = take("initial_data") ? take("initial_data")->first : 0;
        std::vector<Diagnostic> expr_errors;
        const std::string& spec = cfg.initial_data;
        if (cfg.equation == Equation::Boussinesq) {
            const auto xi_pos = spec.find("xi:");
            const auto om_pos = spec.find("omega:");
            const auto semi = spec.find(';');
            if (xi_pos == std::string::npos || om_pos == std::string::npos ||
                semi == std::string::npos)
                expr_errors.push_back(
                    {line, "Boussinesq initial_data must be 'xi: EXPR; omega: EXPR'"});
            else {
                build_expression(trim(spec.substr(xi_pos + 3, semi - xi_pos - 3)), cfg.galerkin_n,
                                 expr_errors, line);
                build_expression(trim(spec.substr(om_pos + 6)), cfg.galerkin_n, expr_errors, line);
            }
        } else {
            build_expression(spec, cfg.galerkin_n, expr_errors, line);
        }
        errors.insert(errors.end(), expr_errors.begin(), expr_errors.end());
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

std::string render_config(const RunConfig& cfg, Command command) {
    std::ostringstream os;
    os << "# resolved sqglab configuration (" << command_name(command) << ")\n";
    os << "equation = " << (cfg.equation == Equation::Boussinesq ? "boussinesq" : "sqg") << "\n";
    os << "galerkin_n = " << cfg.galerkin_n << "\n";
    os << "nu = " << format_double(cfg.nu) << "\n";
    if (cfg.equation == Equation::Boussinesq) os << "kappa = " << format_double(cfg.kappa) << "\n";
    os << "dt = " << format_double(cfg.dt) << "\n";
    os << "t_final = " << format_double(cfg.t_final) << "\n";
    os << "scheme = " << cfg.scheme << "\n";
    os << "theta_family = " << cfg.theta_family << "\n";
    os << "theta_radii = " << render_double_list(cfg.theta_radii) << "\n";
    if (cfg.theta_family == "power") os << "theta_alpha = " << format_double(cfg.theta_alpha) << "\n";
    os << "ensemble_size = " << cfg.ensemble_size << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "delta = " << format_double(cfg.delta) << "\n";
    os << "deviation_epsilon = "
       << (cfg.deviation_epsilon <= 0.0 ? std::string("auto") : format_double(cfg.deviation_epsilon))
       << "\n";
    os << "record_times = " << cfg.record_times << "\n";
    if (!cfg.output_dir.empty()) os << "output_dir = " << cfg.output_dir << "\n";
    os << "initial_data = " << cfg.initial_data << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "nonlinear = " << (cfg.nonlinear ? "on" : "off") << "\n";
    if (!cfg.snapshot_times.empty())
        os << "snapshot_times = " << render_double_list(cfg.snapshot_times) << "\n";
    return os.str();
}

std::string config_hash(const RunConfig& cfg, Command command) {
    return to_hex(fnv1a64(render_config(cfg, command)));
}

State build_initial_state(const RunConfig& cfg) {
    std::vector<Diagnostic> errors;
    if (cfg.equation == Equation::Boussinesq) {
        const std::string& spec = cfg.initial_data;
        const auto xi_pos = spec.find("xi:");
        const auto om_pos = spec.find("omega:");
        const auto semi = spec.find(';');
        if (xi_pos == std::string::npos || om_pos == std::string::npos || semi == std::string::npos)
            throw ConfigError({{0, "Boussinesq initial_data must be 'xi: EXPR; omega: EXPR'"}});
        auto xi = build_expression(trim(spec.substr(xi_pos + 3, semi - xi_pos - 3)),
                                   cfg.galerkin_n, errors, 0);
        auto omega =
            build_expression(trim(spec.substr(om_pos + 6)), cfg.galerkin_n, errors, 0);
        if (!errors.empty()) throw ConfigError(std::move(errors));
        return State(std::move(xi), std::move(omega));
    }
    auto omega = build_expression(trim(cfg.initial_data), cfg.galerkin_n, errors, 0);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return State(std::move(omega));
}

SdeConfig make_sde_config(const RunConfig& cfg) {
    SdeConfig sde;
    sde.equation = cfg.equation;
    sde.truncation = cfg.galerkin_n;
    sde.nu = cfg.nu;
    sde.kappa = cfg.kappa;
    sde.dt = cfg.dt;
    sde.t_final = cfg.t_final;
    sde.include_nonlinear = cfg.nonlinear;
    if (cfg.scheme == "ItoEulerMaruyama")
        sde.scheme = StochasticScheme::ItoEulerMaruyama;
    else if (cfg.scheme == "StratonovichHeun")
        sde.scheme = StochasticScheme::StratonovichHeun;
    else
        sde.scheme = StochasticScheme::ExponentialEM;
    const auto family = make_theta_family(cfg);
    sde.theta = family.front();
    return sde;
}

DeterministicConfig make_deterministic_config(const RunConfig& cfg) {
    DeterministicConfig det;
    det.equation = cfg.equation;
    det.truncation = cfg.galerkin_n;
    det.nu = cfg.nu;
    det.kappa = cfg.kappa;
    det.dt = cfg.dt;
    det.t_final = cfg.t_final;
    det.include_nonlinear = cfg.nonlinear;
    det.scheme = cfg.scheme == "ExplicitEuler" ? DeterministicScheme::ExplicitEuler
                                               : DeterministicScheme::ExponentialRk2;
    return det;
}

std::vector<NoiseCoefficients> make_theta_family(const RunConfig& cfg) {
    std::vector<NoiseCoefficients> family;
    for (double r : cfg.theta_radii)
        family.push_back(cfg.theta_family == "power"
                             ? NoiseCoefficients::power(r, cfg.theta_alpha)
                             : NoiseCoefficients::cutoff(r));
    return family;
}

} // namespace sqg
