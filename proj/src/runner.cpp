#include "sqg/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

#include "sqg/checks.hpp"
#include "sqg/ensemble.hpp"
#include "sqg/io.hpp"
#include "sqg/transform.hpp"

namespace sqg {

namespace fs = std::filesystem;

namespace {

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path resolve_output_dir(const RunConfig& cfg, Command command,
                            const std::optional<std::string>& override_dir) {
    if (override_dir) return *override_dir;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    const char* root = std::getenv("SQGLAB_OUTPUT_ROOT");
    const fs::path base = root ? fs::path(root) : fs::path("runs");
    return base / (command_name(command) + "-" + config_hash(cfg, command).substr(0, 8));
}

RunManifest make_manifest(const RunConfig& cfg, Command command, const std::string& started) {
    RunManifest m;
    m.tool_version = kToolVersion;
    m.command = command_name(command);
    m.config_hash = config_hash(cfg, command);
    m.seed = cfg.seed;
    m.started_at = started;
    m.finished_at = timestamp();
    return m;
}

RecordingPlan make_plan(const RunConfig& cfg) {
    RecordingPlan plan;
    plan.record_count = cfg.record_times;
    plan.snapshot_times = cfg.snapshot_times;
    plan.observables = default_observables(cfg.galerkin_n);
    return plan;
}

std::string snapshot_file_name(const Snapshot& snap, int index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snap_%03d_%s.fld", index, snap.field_name.c_str());
    return buf;
}

void write_trajectory_outputs(AtomicOutputDir& out, const std::string& csv_name,
                              const TrajectoryRecord& rec, const std::string& prefix,
                              int grid_side) {
    out.write(csv_name, trajectory_to_csv(rec));
    int index = 0;
    for (const auto& snap : rec.snapshots)
        out.write(prefix + snapshot_file_name(snap, index++),
                  field_to_container(snap.field, grid_side));
}

int run_simulate(const RunConfig& cfg, AtomicOutputDir& out) {
    const State initial = build_initial_state(cfg);
    const SdeConfig sde = make_sde_config(cfg);
    const RecordingPlan plan = make_plan(cfg);
    const int grid_side = product_grid_side(2 * cfg.galerkin_n + 2);

    const int threads = cfg.threads > 0
                            ? cfg.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    std::vector<TrajectoryRecord> records(cfg.ensemble_size);
    std::vector<std::string> failures(cfg.ensemble_size);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int m = next.fetch_add(1);
            if (m >= cfg.ensemble_size) return;
            try {
                BrownianDriver driver(cfg.seed, static_cast<std::uint64_t>(m));
                records[m] = simulate(sde, initial, driver, plan);
            } catch (const TrajectoryAbort& abort) {
                std::ostringstream os;
                os << abort.what() << " (sample " << m << ", step " << abort.step << ", t = "
                   << abort.time << ")";
                failures[m] = os.str();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (int m = 0; m < cfg.ensemble_size; ++m) {
        if (!failures[m].empty()) {
            std::fprintf(stderr, "trajectory abort: %s\n", failures[m].c_str());
            return 2;
        }
        char name[48];
        std::snprintf(name, sizeof(name), "traj_%03d.csv", m);
        char prefix[48];
        std::snprintf(prefix, sizeof(prefix), "traj_%03d_", m);
        write_trajectory_outputs(out, name, records[m], prefix, grid_side);
    }
    return 0;
}

int run_limit(const RunConfig& cfg, AtomicOutputDir& out) {
    const State initial = build_initial_state(cfg);
    const DeterministicConfig det = make_deterministic_config(cfg);
    const RecordingPlan plan = make_plan(cfg);
    const int grid_side = product_grid_side(2 * cfg.galerkin_n + 2);
    try {
        const TrajectoryRecord rec =
            cfg.equation == Equation::Boussinesq
                ? solve_boussinesq(*initial.xi, initial.omega, det, plan)
                : solve_sqg(initial.omega, det, plan);
        write_trajectory_outputs(out, "traj_limit.csv", rec, "limit_", grid_side);
    } catch (const TrajectoryAbort& abort) {
        std::fprintf(stderr, "trajectory abort: %s (step %lld)\n", abort.what(),
                     static_cast<long long>(abort.step));
        return 2;
    }
    return 0;
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::string out =
        "radius,ratio,mean_distance,p_hat,wilson_low,wilson_high,law_distance,aborted\n";
    for (const auto& row : report.rows) {
        out += format_double(row.support_radius);
        out += ',';
        out += format_double(row.ratio);
        out += ',';
        out += format_double(row.mean_distance);
        out += ',';
        out += format_double(row.deviation.p_hat);
        out += ',';
        out += format_double(row.deviation.low);
        out += ',';
        out += format_double(row.deviation.high);
        out += ',';
        out += format_double(row.law_distance);
        out += ',';
        out += std::to_string(row.aborted_count);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const ConvergenceReport& report, const RunConfig& cfg) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"config_hash\": \"" << config_hash(cfg, Command::Scaling) << "\",\n";
    os << "  \"seed\": " << cfg.seed << ",\n";
    os << "  \"deviation_epsilon\": " << format_double(report.deviation_epsilon) << ",\n";
    os << "  \"law_observable\": \"" << report.law_observable << "\",\n";
    os << "  \"rows\": [\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        os << "    {\"radius\": " << format_double(row.support_radius)
           << ", \"ratio\": " << format_double(row.ratio)
           << ", \"mean_distance\": " << format_double(row.mean_distance)
           << ", \"p_hat\": " << format_double(row.deviation.p_hat) << ", \"wilson\": ["
           << format_double(row.deviation.low) << ", " << format_double(row.deviation.high)
           << "], \"law_distance\": " << format_double(row.law_distance)
           << ", \"aborted\": " << row.aborted_count << ",\n      \"samples\": [";
        for (std::size_t s = 0; s < row.samples.size(); ++s) {
            const auto& sample = row.samples[s];
            os << (s ? ", " : "") << "{\"index\": " << sample.sample_index << ", \"distance\": "
               << format_double(sample.sup_distance) << ", \"aborted\": "
               << (sample.aborted ? "true" : "false") << "}";
        }
        os << "]}" << (i + 1 < report.rows.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"fit\": {\"slope\": " << format_double(report.fit.slope)
       << ", \"intercept\": " << format_double(report.fit.intercept) << ", \"slope_ci\": ["
       << format_double(report.fit.slope_low) << ", " << format_double(report.fit.slope_high)
       << "], \"points\": " << report.fit.points << "}\n";
    os << "}\n";
    return os.str();
}

int run_scaling_cmd(const RunConfig& cfg, AtomicOutputDir& out) {
    const State initial = build_initial_state(cfg);
    EnsembleSpec spec;
    spec.base = make_sde_config(cfg);
    spec.theta_family = make_theta_family(cfg);
    spec.sample_count = cfg.ensemble_size;
    spec.seed = cfg.seed;
    spec.delta = cfg.delta;
    spec.deviation_epsilon = cfg.deviation_epsilon;
    spec.record_count = cfg.record_times;
    spec.threads = cfg.threads;
    const ConvergenceReport report = run_scaling(spec, initial);
    out.write("report.csv", report_to_csv(report));
    out.write("report.json", report_to_json(report, cfg));
    return 0;
}

int run_verify(const RunConfig& cfg, AtomicOutputDir& out) {
    const auto results = verify_suites(cfg.threads);
    const std::string table = format_check_table(results);
    std::fputs(table.c_str(), stdout);
    std::string csv = "name,pass,observed,bound,seconds\n";
    bool all_pass = true;
    for (const auto& r : results) {
        csv += r.name + "," + (r.pass ? "1" : "0") + "," + format_double(r.observed) + "," +
               format_double(r.threshold) + "," + format_double(r.seconds) + "\n";
        all_pass = all_pass && r.pass;
    }
    out.write("verify.csv", csv);
    return all_pass ? 0 : 3;
}

} // namespace

RunResult run_command(Command command, const RunConfig& cfg_in,
                      const std::optional<std::string>& output_override,
                      const std::optional<int>& threads_override) {
    RunConfig cfg = cfg_in;
    if (threads_override) cfg.threads = *threads_override;

    RunResult result;
    result.output_dir = resolve_output_dir(cfg, command, output_override);
    const std::string started = timestamp();

    try {
        AtomicOutputDir out(result.output_dir);
        out.write("config.resolved", render_config(cfg, command));
        int code = 0;
        switch (command) {
            case Command::Simulate: code = run_simulate(cfg, out); break;
            case Command::Limit: code = run_limit(cfg, out); break;
            case Command::Scaling: code = run_scaling_cmd(cfg, out); break;
            case Command::Verify: code = run_verify(cfg, out); break;
        }
        result.exit_code = code;
        if (code == 0) {
            out.commit(make_manifest(cfg, command, started));
            result.message = "wrote " + result.output_dir.string();
        } else {
            result.message = code == 2 ? "runtime abort" : "checks failed";
        }
    } catch (const ConfigError& e) {
        result.exit_code = 1;
        result.message = e.what();
    } catch (const TrajectoryAbort& e) {
        result.exit_code = 2;
        result.message = e.what();
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.message = e.what();
    }
    return result;
}

} // namespace sqg
