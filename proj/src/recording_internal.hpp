#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sqg/trajectory.hpp"

namespace sqg::detail {

// Shared recording machinery for the stochastic and deterministic solvers.
// Dissipation integrands are accumulated at every step; norms, observables and
// snapshots only at the recorded times.
class Recorder {
  public:
    Recorder(double dt, std::int64_t steps, const RecordingPlan& plan, bool has_xi,
             RecordObserver observer)
        : dt_(dt), plan_(plan), observer_(std::move(observer)) {
        const int r = std::max(plan.record_count, 2);
        for (int i = 0; i < r; ++i) {
            const auto n =
                static_cast<std::int64_t>(std::llround(static_cast<double>(i) * steps / (r - 1)));
            if (record_steps_.empty() || record_steps_.back() != n) record_steps_.push_back(n);
        }
        if (has_xi) {
            record_.fields.push_back({"xi", {}, {}, {}});
            integrals_.emplace_back(dt);
        }
        record_.fields.push_back({"omega", {}, {}, {}});
        integrals_.emplace_back(dt);
        for (const auto& obs : plan.observables) record_.observables[obs.id] = {};
        if (has_xi)
            for (const auto& obs : plan.observables) record_.observables["xi:" + obs.id] = {};
    }

    void at_step(std::int64_t n, const State& state) {
        std::size_t fi = 0;
        if (state.xi) integrals_[fi++].push(square(grad_l2_norm(*state.xi)));
        integrals_[fi].push(square(grad_l2_norm(state.omega)));

        if (next_ >= record_steps_.size() || record_steps_[next_] != n) return;
        const double t = static_cast<double>(n) * dt_;
        record_.times.push_back(t);
        fi = 0;
        if (state.xi) append_field(fi++, *state.xi);
        append_field(fi, state.omega);
        for (const auto& obs : plan_.observables) {
            record_.observables[obs.id].push_back(state.omega.inner(obs.field));
            if (state.xi) record_.observables["xi:" + obs.id].push_back(state.xi->inner(obs.field));
        }
        if (wants_snapshot(t)) {
            if (state.xi) record_.snapshots.push_back({t, "xi", *state.xi});
            record_.snapshots.push_back({t, "omega", state.omega});
        }
        if (observer_) observer_(static_cast<int>(next_), t, state);
        ++next_;
    }

    std::size_t record_count() const { return record_steps_.size(); }

    TrajectoryRecord take() && { return std::move(record_); }

  private:
    static double square(double v) { return v * v; }

    void append_field(std::size_t fi, const SpectralScalarField& f) {
        record_.fields[fi].l2.push_back(f.l2_norm());
        record_.fields[fi].grad_l2.push_back(grad_l2_norm(f));
        record_.fields[fi].dissipation_integral.push_back(integrals_[fi].value());
    }

    bool wants_snapshot(double t) const {
        if (plan_.snapshot_every_record) return true;
        for (double s : plan_.snapshot_times)
            if (std::abs(s - t) <= 0.5 * dt_) return true;
        return false;
    }

    double dt_;
    RecordingPlan plan_;
    RecordObserver observer_;
    std::vector<std::int64_t> record_steps_;
    std::size_t next_ = 0;
    std::vector<CorrectedIntegral> integrals_;
    TrajectoryRecord record_;
};

inline std::int64_t step_count(double t_final, double dt) {
    const auto s = static_cast<std::int64_t>(std::llround(t_final / dt));
    if (s < 1 || std::abs(static_cast<double>(s) * dt - t_final) > 1e-9 * std::max(1.0, t_final))
        throw std::invalid_argument("t_final must be a positive integer multiple of dt");
    return s;
}

} // namespace sqg::detail
