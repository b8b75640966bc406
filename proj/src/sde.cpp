#include "sqg/sde.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "recording_internal.hpp"
#include "sqg/operators.hpp"
#include "sqg/transform.hpp"

namespace sqg {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double noise_prefactor(const SdeConfig& cfg) {
    if (cfg.nu == 0.0) return 0.0;
    return 2.0 * std::sqrt(cfg.nu) / cfg.theta.l2_norm();
}

// Diagonal heat multiplier exp(diffusivity * Delta * dt) as a coefficient table.
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

void check_finite(const State& s, std::int64_t n, double dt) {
    const bool ok = s.omega.finite() && (!s.xi || s.xi->finite());
    if (!ok)
        throw TrajectoryAbort("non-finite state (blow-up or instability)", n,
                              static_cast<double>(n) * dt);
}

// Per-step evaluation context shared by the schemes.
class Stepper {
  public:
    Stepper(const SdeConfig& cfg, const BrownianDriver& driver)
        : cfg_(cfg),
          driver_(driver),
          modes_(effective_noise_set(cfg.theta, cfg.truncation)),
          prefactor_(noise_prefactor(cfg)) {
        noise_truncation_ = 1;
        for (const auto& k : modes_)
            noise_truncation_ = std::max(noise_truncation_, static_cast<int>(std::ceil(k.norm())));
        exp_omega_ = exp_multiplier(cfg.truncation, cfg.nu, cfg.dt);
        if (cfg.equation == Equation::Boussinesq)
            exp_xi_ = exp_multiplier(cfg.truncation, cfg.kappa + cfg.nu, cfg.dt);
    }

    // sum_k c theta_k sigma_k DeltaB^k_n as one divergence-free field.
    SpectralVectorField noise_velocity(std::int64_t n) const {
        SpectralVectorField w(noise_truncation_);
        for (const auto& k : modes_) {
            const double amp =
                prefactor_ * cfg_.theta.value(k) * driver_.increment(k, n, cfg_.dt);
            const double inv_norm = 1.0 / k.norm();
            w.x1.add_coeff(k, amp * k.perp().k1 * inv_norm);
            w.x2.add_coeff(k, amp * k.perp().k2 * inv_norm);
        }
        return w;
    }

    SpectralScalarField noise_term(const SpectralVectorField& w,
                                   const SpectralScalarField& f) const {
        if (prefactor_ == 0.0 || modes_.empty()) return SpectralScalarField(cfg_.truncation);
        return transport_by(w, f, cfg_.truncation);
    }

    SpectralScalarField nonlinear(const SpectralScalarField& advected,
                                  const State& state) const {
        if (!cfg_.include_nonlinear || cfg_.zero_velocity_hook)
            return SpectralScalarField(cfg_.truncation);
        return -1.0 * advect(state.omega, advected);
    }

    // Drift of the Ito formulation (with the nu Delta correction).
    State ito_drift(const State& s) const {
        State d(nonlinear(s.omega, s));
        d.omega.axpy(cfg_.nu, laplacian_cache(s.omega));
        if (s.xi) {
            SpectralScalarField dxi = nonlinear(*s.xi, s);
            dxi.axpy(cfg_.kappa + cfg_.nu, laplacian_cache(*s.xi));
            d.xi = std::move(dxi);
            d.omega += partial_derivative(*s.xi, 0);
        }
        return d;
    }

    // Drift of the Stratonovich formulation: no nu Delta anywhere; kappa Delta
    // survives for xi.
    State stratonovich_drift(const State& s) const {
        State d(nonlinear(s.omega, s));
        if (s.xi) {
            SpectralScalarField dxi = nonlinear(*s.xi, s);
            dxi.axpy(cfg_.kappa, laplacian_cache(*s.xi));
            d.xi = std::move(dxi);
            d.omega += partial_derivative(*s.xi, 0);
        }
        return d;
    }

    // Nonlinear-plus-coupling part for the exponential scheme (the full
    // Laplacian lives in the integrating factor).
    State explicit_part(const State& s) const {
        State d(nonlinear(s.omega, s));
        if (s.xi) {
            d.xi = nonlinear(*s.xi, s);
            d.omega += partial_derivative(*s.xi, 0);
        }
        return d;
    }

    State step(const State& state, std::int64_t n) const {
        switch (cfg_.scheme) {
            case StochasticScheme::ItoEulerMaruyama: {
                const SpectralVectorField w = noise_velocity(n);
                State next = state;
                const State d = ito_drift(state);
                next.omega.axpy(cfg_.dt, d.omega);
                next.omega += noise_term(w, state.omega);
                if (state.xi) {
                    next.xi->axpy(cfg_.dt, *d.xi);
                    *next.xi += noise_term(w, *state.xi);
                }
                return next;
            }
            case StochasticScheme::StratonovichHeun: {
                const SpectralVectorField w = noise_velocity(n);
                const State d0 = stratonovich_drift(state);
                State pred = state;
                pred.omega.axpy(cfg_.dt, d0.omega);
                pred.omega += noise_term(w, state.omega);
                if (state.xi) {
                    pred.xi->axpy(cfg_.dt, *d0.xi);
                    *pred.xi += noise_term(w, *state.xi);
                }
                const State d1 = stratonovich_drift(pred);
                State next = state;
                next.omega.axpy(0.5 * cfg_.dt, d0.omega);
                next.omega.axpy(0.5 * cfg_.dt, d1.omega);
                next.omega.axpy(0.5, noise_term(w, state.omega));
                next.omega.axpy(0.5, noise_term(w, pred.omega));
                if (state.xi) {
                    next.xi->axpy(0.5 * cfg_.dt, *d0.xi);
                    next.xi->axpy(0.5 * cfg_.dt, *d1.xi);
                    next.xi->axpy(0.5, noise_term(w, *state.xi));
                    next.xi->axpy(0.5, noise_term(w, *pred.xi));
                }
                return next;
            }
            case StochasticScheme::ExponentialEM: {
                const SpectralVectorField w = noise_velocity(n);
                const State d = explicit_part(state);
                State next = state;
                next.omega.axpy(cfg_.dt, d.omega);
                next.omega += noise_term(w, state.omega);
                apply_multiplier(next.omega, exp_omega_);
                if (state.xi) {
                    next.xi->axpy(cfg_.dt, *d.xi);
                    *next.xi += noise_term(w, *state.xi);
                    apply_multiplier(*next.xi, exp_xi_);
                }
                return next;
            }
        }
        throw std::logic_error("unknown scheme");
    }

    const std::vector<Wavevector>& modes() const { return modes_; }

  private:
    // Laplacian is cheap; no memoization, name kept for symmetry of call sites.
    SpectralScalarField laplacian_cache(const SpectralScalarField& f) const {
        return laplacian(f);
    }

    const SdeConfig& cfg_;
    const BrownianDriver& driver_;
    std::vector<Wavevector> modes_;
    double prefactor_;
    int noise_truncation_;
    std::vector<double> exp_omega_;
    std::vector<double> exp_xi_;
};

void validate_state(const SdeConfig& cfg, const State& s) {
    if (s.omega.truncation() != cfg.truncation)
        throw std::invalid_argument("initial omega truncation does not match the configuration");
    const bool needs_xi = cfg.equation == Equation::Boussinesq;
    if (needs_xi && !s.xi) throw std::invalid_argument("Boussinesq requires a xi field");
    if (!needs_xi && s.xi) throw std::invalid_argument("SQG state carries no xi field");
    if (s.xi && s.xi->truncation() != cfg.truncation)
        throw std::invalid_argument("initial xi truncation does not match the configuration");
}

} // namespace

std::vector<Wavevector> effective_noise_set(const NoiseCoefficients& theta, int truncation) {
    return theta.support(2.0 * truncation);
}

SpectralScalarField ito_drift_sqg(const SpectralScalarField& omega, const SdeConfig& cfg) {
    SpectralScalarField drift(omega.truncation());
    if (cfg.include_nonlinear && !cfg.zero_velocity_hook) drift -= advect(omega, omega);
    drift.axpy(cfg.nu, laplacian(omega));
    return drift;
}

SpectralScalarField diffusion_sqg(const SpectralScalarField& omega, const SdeConfig& cfg,
                                  const std::map<Wavevector, double>& increments) {
    const auto modes = effective_noise_set(cfg.theta, omega.truncation());
    const double c = noise_prefactor(cfg);
    int wt = 1;
    for (const auto& k : modes) wt = std::max(wt, static_cast<int>(std::ceil(k.norm())));
    SpectralVectorField w(wt);
    for (const auto& k : modes) {
        const auto it = increments.find(k);
        if (it == increments.end())
            throw std::invalid_argument("missing Brownian increment for an in-support mode");
        const double amp = c * cfg.theta.value(k) * it->second;
        const double inv_norm = 1.0 / k.norm();
        w.x1.add_coeff(k, amp * k.perp().k1 * inv_norm);
        w.x2.add_coeff(k, amp * k.perp().k2 * inv_norm);
    }
    if (c == 0.0 || modes.empty()) return SpectralScalarField(omega.truncation());
    return transport_by(w, omega, omega.truncation());
}

State step(const State& state, const SdeConfig& cfg, const BrownianDriver& driver,
           std::int64_t n) {
    validate_state(cfg, state);
    Stepper stepper(cfg, driver);
    State next = stepper.step(state, n);
    check_finite(next, n + 1, cfg.dt);
    return next;
}

double explicit_stability_bound(int truncation, double nu, double kappa) {
    const double diffusivity = nu + kappa;
    if (diffusivity <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 / (kFourPiSq * truncation * truncation * diffusivity);
}

double advective_cfl_bound(int truncation, double max_velocity) {
    if (max_velocity <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.1 / (2.0 * std::numbers::pi * truncation * max_velocity);
}

double max_velocity_estimate(const SpectralScalarField& omega) {
    const SpectralVectorField u = velocity_from_scalar(omega);
    const int side = product_grid_side(2 * omega.truncation() + 2);
    SpectralTransform& tr = transform_for(side);
    const auto g1 = tr.to_grid(u.x1);
    const auto g2 = tr.to_grid(u.x2);
    double m = 0.0;
    for (std::size_t i = 0; i < g1.size(); ++i)
        m = std::max(m, std::hypot(g1[i], g2[i]));
    return m;
}

TrajectoryRecord simulate(const SdeConfig& cfg, const State& initial, const BrownianDriver& driver,
                          const RecordingPlan& plan, const RecordObserver& observer) {
    validate_state(cfg, initial);
    const std::int64_t steps = detail::step_count(cfg.t_final, cfg.dt);

    const bool explicit_scheme = cfg.scheme != StochasticScheme::ExponentialEM;
    if (explicit_scheme) {
        const double bound = explicit_stability_bound(cfg.truncation, cfg.nu, cfg.kappa);
        if (cfg.dt > bound * (1.0 + 1e-12))
            throw std::invalid_argument("dt exceeds the explicit stability bound");
    }

    Stepper stepper(cfg, driver);
    detail::Recorder recorder(cfg.dt, steps, plan, cfg.equation == Equation::Boussinesq, observer);

    State state = initial;
    recorder.at_step(0, state);
    for (std::int64_t n = 0; n < steps; ++n) {
        if (!explicit_scheme && cfg.include_nonlinear && n % 100 == 0) {
            const double bound =
                advective_cfl_bound(cfg.truncation, max_velocity_estimate(state.omega));
            if (cfg.dt > bound)
                throw TrajectoryAbort("dt exceeds the advective CFL bound", n,
                                      static_cast<double>(n) * cfg.dt);
        }
        state = stepper.step(state, n);
        check_finite(state, n + 1, cfg.dt);
        recorder.at_step(n + 1, state);
    }
    return std::move(recorder).take();
}

} // namespace sqg
