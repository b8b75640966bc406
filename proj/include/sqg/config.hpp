#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/deterministic.hpp"
#include "sqg/sde.hpp"

namespace sqg {

enum class Command { Simulate, Limit, Scaling, Verify };

Command parse_command(const std::string& name);
std::string command_name(Command cmd);

struct Diagnostic {
    int line = 0; // 0: no specific line
    std::string message;
};

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

// Fully resolved flat key-value configuration. One `key = value` per line,
// `#` comments; unknown keys are hard errors with line numbers.
struct RunConfig {
    Equation equation = Equation::Sqg;
    int galerkin_n = 8;
    double nu = 0.0;
    double kappa = 0.0;
    double dt = 0.0;
    double t_final = 0.0;
    std::string scheme;       // resolved per command
    std::string theta_family = "cutoff";
    std::vector<double> theta_radii{8.0};
    double theta_alpha = 0.0;
    int ensemble_size = 1;
    std::uint64_t seed = 12345;
    double delta = 0.5;
    double deviation_epsilon = 0.0; // 0: auto (0.1 ||omega0||_{H^-delta})
    int record_times = 50;
    std::string output_dir; // empty: default root/run-<command>-<hash8>
    std::string initial_data;
    int threads = 0; // 0: core count
    bool nonlinear = true;
    std::vector<double> snapshot_times;
};

// Parses and validates; every violation carries its line number. All defaults
// are resolved so that render_config() echoes the effective configuration.
RunConfig parse_config(const std::string& text, Command command);

// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& cfg, Command command);

// FNV-1a 64 hash of the rendered configuration, as 16 hex digits.
std::string config_hash(const RunConfig& cfg, Command command);

// Builds the initial fields from the preset grammar:
//   zero | e(k1,k2) | random(radius,seed[,amplitude]) | <path>.csv | <path>.fld
// combined with `+` and optional scalar prefixes `c*`; Boussinesq uses
// `xi: EXPR; omega: EXPR`.
State build_initial_state(const RunConfig& cfg);

SdeConfig make_sde_config(const RunConfig& cfg);
DeterministicConfig make_deterministic_config(const RunConfig& cfg);
std::vector<NoiseCoefficients> make_theta_family(const RunConfig& cfg);

} // namespace sqg
