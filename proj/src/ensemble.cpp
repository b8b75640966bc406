#include "sqg/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sqg {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

RecordingPlan make_plan(const EnsembleSpec& spec) {
    RecordingPlan plan;
    plan.record_count = spec.record_count;
    plan.observables =
        spec.observables.empty() ? default_observables(spec.base.truncation) : spec.observables;
    return plan;
}

DeterministicConfig limit_config(const EnsembleSpec& spec) {
    DeterministicConfig cfg;
    cfg.equation = spec.base.equation;
    cfg.truncation = spec.base.truncation;
    cfg.nu = spec.base.nu;
    cfg.kappa = spec.base.kappa;
    cfg.dt = spec.base.dt;
    cfg.t_final = spec.base.t_final;
    cfg.scheme = spec.limit_scheme;
    cfg.include_nonlinear = spec.base.include_nonlinear;
    return cfg;
}

// Trapezoid weights on the recorded grid for the discretized L2(0,T;L2) metric.
std::vector<double> trapezoid_weights(const std::vector<double>& times) {
    std::vector<double> w(times.size(), 0.0);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double h = times[i + 1] - times[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

} // namespace

std::vector<State> limit_snapshots(const EnsembleSpec& spec, const State& initial) {
    std::vector<State> states;
    const RecordingPlan plan = make_plan(spec);
    const auto observer = [&](int, double, const State& s) { states.push_back(s); };
    const DeterministicConfig cfg = limit_config(spec);
    if (cfg.equation == Equation::Boussinesq)
        solve_boussinesq(*initial.xi, initial.omega, cfg, plan, observer);
    else
        solve_sqg(initial.omega, cfg, plan, observer);
    return states;
}

FamilyRow run_ensemble(const EnsembleSpec& spec, const NoiseCoefficients& theta,
                       const State& initial, const std::vector<State>& limit) {
    if (spec.sample_count < 2) throw std::invalid_argument("ensemble needs at least 2 samples");
    FamilyRow row;
    row.support_radius = theta.support_radius();
    row.ratio = scaling_ratio(theta);
    row.samples.resize(spec.sample_count);

    SdeConfig cfg = spec.base;
    cfg.theta = theta;
    const RecordingPlan plan = make_plan(spec);

    // The limit trajectory was recorded on the same plan; reuse its timing.
    std::vector<double> record_times(limit.size());
    {
        // Recorded times are i * steps/(R-1) * dt; recompute for weights.
        const auto steps = static_cast<std::int64_t>(std::llround(cfg.t_final / cfg.dt));
        const int r = std::max(plan.record_count, 2);
        std::size_t idx = 0;
        std::int64_t prev = -1;
        for (int i = 0; i < r && idx < record_times.size(); ++i) {
            const auto n =
                static_cast<std::int64_t>(std::llround(static_cast<double>(i) * steps / (r - 1)));
            if (n == prev) continue;
            record_times[idx++] = static_cast<double>(n) * cfg.dt;
            prev = n;
        }
        if (idx != record_times.size())
            throw std::logic_error("limit snapshot count does not match the recording grid");
    }
    const std::vector<double> weights = trapezoid_weights(record_times);

    const int threads = resolve_threads(spec.threads);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int m = next.fetch_add(1);
            if (m >= spec.sample_count) return;
            SampleOutcome& out = row.samples[m];
            out.sample_index = m;
            double sup_omega = 0.0;
            double xi_l2_sq = 0.0;
            const auto observer = [&](int idx, double, const State& s) {
                const auto& ref = limit[idx];
                sup_omega = std::max(sup_omega, sobolev_norm(s.omega - ref.omega, -spec.delta));
                if (s.xi) {
                    const double d = (*s.xi - *ref.xi).l2_norm();
                    xi_l2_sq += weights[idx] * d * d;
                }
            };
            try {
                BrownianDriver driver(spec.seed, static_cast<std::uint64_t>(m));
                const TrajectoryRecord rec = simulate(cfg, initial, driver, plan, observer);
                out.sup_distance = cfg.equation == Equation::Boussinesq
                                       ? std::max(sup_omega, std::sqrt(xi_l2_sq))
                                       : sup_omega;
                for (const auto& [id, series] : rec.observables)
                    out.terminal_observables[id] = series.back();
            } catch (const TrajectoryAbort& abort) {
                out.aborted = true;
                out.abort_reason = abort.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Reduction in fixed sample order, independent of completion order.
    std::vector<double> distances;
    std::vector<double> half_a, half_b;
    for (const auto& s : row.samples) {
        if (s.aborted) {
            ++row.aborted_count;
            continue;
        }
        distances.push_back(s.sup_distance);
        const auto it = s.terminal_observables.find(spec.law_observable);
        if (it != s.terminal_observables.end()) {
            (s.sample_index < spec.sample_count / 2 ? half_a : half_b).push_back(it->second);
        }
    }
    if (distances.empty()) throw std::runtime_error("every sample in the ensemble aborted");
    double sum = 0.0;
    for (double d : distances) sum += d;
    row.mean_distance = sum / static_cast<double>(distances.size());

    const double epsilon = spec.deviation_epsilon;
    row.deviation = deviation_probability(distances, epsilon);
    if (!half_a.empty() && !half_b.empty()) row.law_distance = law_distance(half_a, half_b);
    return row;
}

ConvergenceReport run_scaling(const EnsembleSpec& spec, const State& initial) {
    if (spec.theta_family.empty()) throw std::invalid_argument("empty theta family");
    for (std::size_t i = 0; i + 1 < spec.theta_family.size(); ++i) {
        if (scaling_ratio(spec.theta_family[i + 1]) >= scaling_ratio(spec.theta_family[i]))
            throw std::invalid_argument("theta family must have strictly decreasing ratios");
    }
    if (spec.delta <= 0.0 || spec.delta >= 1.0)
        throw std::invalid_argument("delta must lie in (0, 1)");

    EnsembleSpec resolved = spec;
    if (resolved.deviation_epsilon <= 0.0)
        resolved.deviation_epsilon = 0.1 * sobolev_norm(initial.omega, -spec.delta);

    ConvergenceReport report;
    report.deviation_epsilon = resolved.deviation_epsilon;
    report.law_observable = resolved.law_observable;

    const std::vector<State> limit = limit_snapshots(resolved, initial);
    for (const auto& theta : resolved.theta_family)
        report.rows.push_back(run_ensemble(resolved, theta, initial, limit));

    std::vector<double> ratios, distances;
    for (const auto& row : report.rows) {
        ratios.push_back(row.ratio);
        distances.push_back(row.mean_distance);
    }
    if (ratios.size() >= 3) report.fit = fit_trend(ratios, distances);
    return report;
}

WilsonInterval deviation_probability(std::span<const double> distances, double epsilon) {
    if (distances.size() < 2) throw std::invalid_argument("need at least 2 samples");
    int exceed = 0;
    for (double d : distances)
        if (d > epsilon) ++exceed;
    return wilson_interval(exceed, static_cast<int>(distances.size()));
}

double law_distance(std::span<const double> half_a, std::span<const double> half_b) {
    return wasserstein1(std::vector<double>(half_a.begin(), half_a.end()),
                        std::vector<double>(half_b.begin(), half_b.end()));
}

LinearFit fit_trend(std::span<const double> ratios, std::span<const double> distances) {
    if (ratios.size() != distances.size() || ratios.size() < 3)
        throw std::invalid_argument("trend fit needs >= 3 family members");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] <= 0.0 || distances[i] <= 0.0)
            throw std::invalid_argument("trend fit needs positive ratios and distances");
        x.push_back(std::log(ratios[i]));
        y.push_back(std::log(distances[i]));
    }
    return linear_fit(x, y);
}

} // namespace sqg
