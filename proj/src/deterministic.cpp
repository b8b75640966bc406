#include "sqg/deterministic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "recording_internal.hpp"
#include "sqg/operators.hpp"

namespace sqg {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

std::vector<double> exp_multiplier(int truncation, double diffusivity, double dt) {
    SpectralScalarField probe(truncation);
    std::vector<double> mult(probe.raw().size(), 1.0);
    probe.for_each([&](Wavevector k, double) {
        mult[probe.index(k)] =
            std::exp(-kFourPiSq * static_cast<double>(k.norm_sq()) * diffusivity * dt);
    });
    return mult;
}

void apply_multiplier(SpectralScalarField& f, const std::vector<double>& mult) {
    auto& raw = f.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] *= mult[i];
}

class DeterministicStepper {
  public:
    DeterministicStepper(const DeterministicConfig& cfg) : cfg_(cfg) {
        exp_omega_ = exp_multiplier(cfg.truncation, cfg.nu, cfg.dt);
        if (cfg.equation == Equation::Boussinesq)
            exp_xi_ = exp_multiplier(cfg.truncation, cfg.kappa + cfg.nu, cfg.dt);
    }

    // Nonlinear and coupling terms; the Laplacians live in the multiplier.
    State explicit_part(const State& s) const {
        State d(nonlinear(s.omega, s));
        if (s.xi) {
            d.xi = nonlinear(*s.xi, s);
            d.omega += partial_derivative(*s.xi, 0);
        }
        return d;
    }

    State full_rhs(const State& s) const {
        State d = explicit_part(s);
        d.omega.axpy(cfg_.nu, laplacian(s.omega));
        if (s.xi) d.xi->axpy(cfg_.kappa + cfg_.nu, laplacian(*s.xi));
        return d;
    }

    State step(const State& s) const {
        switch (cfg_.scheme) {
            case DeterministicScheme::ExplicitEuler: {
                const State d = full_rhs(s);
                State next = s;
                next.omega.axpy(cfg_.dt, d.omega);
                if (s.xi) next.xi->axpy(cfg_.dt, *d.xi);
                return next;
            }
            case DeterministicScheme::ExponentialRk2: {
                // Lawson two-stage: exact integrating factor, Heun on the rest.
                const State k1 = explicit_part(s);
                State pred = s;
                pred.omega.axpy(cfg_.dt, k1.omega);
                apply_multiplier(pred.omega, exp_omega_);
                if (s.xi) {
                    pred.xi->axpy(cfg_.dt, *k1.xi);
                    apply_multiplier(*pred.xi, exp_xi_);
                }
                const State k2 = explicit_part(pred);
                State next = s;
                next.omega.axpy(0.5 * cfg_.dt, k1.omega);
                apply_multiplier(next.omega, exp_omega_);
                next.omega.axpy(0.5 * cfg_.dt, k2.omega);
                if (s.xi) {
                    next.xi->axpy(0.5 * cfg_.dt, *k1.xi);
                    apply_multiplier(*next.xi, exp_xi_);
                    next.xi->axpy(0.5 * cfg_.dt, *k2.xi);
                }
                return next;
            }
        }
        throw std::logic_error("unknown scheme");
    }

  private:
    SpectralScalarField nonlinear(const SpectralScalarField& advected, const State& s) const {
        if (!cfg_.include_nonlinear) return SpectralScalarField(cfg_.truncation);
        return -1.0 * advect(s.omega, advected);
    }

    const DeterministicConfig& cfg_;
    std::vector<double> exp_omega_;
    std::vector<double> exp_xi_;
};

TrajectoryRecord run(const DeterministicConfig& cfg, const State& initial,
                     const RecordingPlan& plan, const RecordObserver& observer) {
    if (initial.omega.truncation() != cfg.truncation)
        throw std::invalid_argument("initial data truncation does not match the configuration");
    const std::int64_t steps = detail::step_count(cfg.t_final, cfg.dt);

    if (cfg.scheme == DeterministicScheme::ExplicitEuler) {
        const double bound = explicit_stability_bound(cfg.truncation, cfg.nu, cfg.kappa);
        if (cfg.dt > bound * (1.0 + 1e-12))
            throw std::invalid_argument("dt exceeds the explicit stability bound");
    }

    DeterministicStepper stepper(cfg);
    detail::Recorder recorder(cfg.dt, steps, plan, cfg.equation == Equation::Boussinesq, observer);

    State state = initial;
    recorder.at_step(0, state);
    for (std::int64_t n = 0; n < steps; ++n) {
        if (cfg.scheme == DeterministicScheme::ExponentialRk2 && cfg.include_nonlinear &&
            n % 100 == 0) {
            const double bound =
                advective_cfl_bound(cfg.truncation, max_velocity_estimate(state.omega));
            if (cfg.dt > bound)
                throw TrajectoryAbort("dt exceeds the advective CFL bound", n,
                                      static_cast<double>(n) * cfg.dt);
        }
        state = stepper.step(state);
        if (!state.omega.finite() || (state.xi && !state.xi->finite()))
            throw TrajectoryAbort("non-finite state (blow-up or instability)", n + 1,
                                  static_cast<double>(n + 1) * cfg.dt);
        recorder.at_step(n + 1, state);
    }
    return std::move(recorder).take();
}

} // namespace

TrajectoryRecord solve_sqg(const SpectralScalarField& omega0, const DeterministicConfig& cfg,
                           const RecordingPlan& plan, const RecordObserver& observer) {
    if (cfg.equation != Equation::Sqg)
        throw std::invalid_argument("solve_sqg called with a non-SQG configuration");
    return run(cfg, State(omega0), plan, observer);
}

TrajectoryRecord solve_boussinesq(const SpectralScalarField& xi0,
                                  const SpectralScalarField& omega0,
                                  const DeterministicConfig& cfg, const RecordingPlan& plan,
                                  const RecordObserver& observer) {
    if (cfg.equation != Equation::Boussinesq)
        throw std::invalid_argument("solve_boussinesq called with a non-Boussinesq configuration");
    return run(cfg, State(xi0, omega0), plan, observer);
}

StabilityGapSeries stability_gap(const TrajectoryRecord& a, const TrajectoryRecord& b,
                                 Equation equation, double fitted_c) {
    if (a.times != b.times) throw std::invalid_argument("mismatched time grids");
    if (a.snapshots.size() != b.snapshots.size() || a.snapshots.empty())
        throw std::invalid_argument("stability_gap needs snapshots at every recorded time");

    StabilityGapSeries out;
    out.times = a.times;

    const std::size_t per_time = equation == Equation::Boussinesq ? 2 : 1;
    if (a.snapshots.size() != per_time * a.times.size())
        throw std::invalid_argument("snapshot coverage does not match the time grid");

    for (std::size_t i = 0; i < a.times.size(); ++i) {
        double gap_sq = 0.0;
        for (std::size_t j = 0; j < per_time; ++j) {
            const auto& sa = a.snapshots[per_time * i + j];
            const auto& sb = b.snapshots[per_time * i + j];
            if (sa.field_name != sb.field_name)
                throw std::invalid_argument("snapshot field mismatch");
            gap_sq += (sa.field - sb.field).l2_norm_sq();
        }
        out.gap_sq.push_back(gap_sq);

        double driver = 0.0;
        for (const auto& series : a.fields) driver += series.dissipation_integral[i];
        if (equation == Equation::Boussinesq) driver += a.times[i];
        out.driver.push_back(driver);
    }
    out.terminal_gap = std::sqrt(out.gap_sq.back());

    const double gap0 = out.gap_sq.front();
    if (fitted_c <= 0.0) {
        double c = 0.0;
        if (gap0 > 0.0) {
            for (std::size_t i = 1; i < out.gap_sq.size(); ++i) {
                if (out.gap_sq[i] <= gap0 || out.driver[i] <= 0.0) continue;
                c = std::max(c, std::log(out.gap_sq[i] / gap0) / out.driver[i]);
            }
        }
        out.fitted_c = c * 1.05;
    } else {
        out.fitted_c = fitted_c;
    }

    for (std::size_t i = 0; i < out.gap_sq.size(); ++i) {
        const double env = gap0 * std::exp(out.fitted_c * out.driver[i]);
        out.envelope_sq.push_back(env);
        if (out.gap_sq[i] > env * (1.0 + 1e-9)) {
            out.within_envelope = false;
            out.violation_times.push_back(out.times[i]);
        }
    }
    return out;
}

} // namespace sqg
