#pragma once

#include <map>

#include "sqg/brownian.hpp"
#include "sqg/noise.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

enum class Equation { Sqg, Boussinesq };

enum class StochasticScheme { ItoEulerMaruyama, StratonovichHeun, ExponentialEM };

struct SdeConfig {
    Equation equation = Equation::Sqg;
    int truncation = 8;
    double nu = 0.1;          // noise intensity; nu = 0 degenerates to the inviscid system
    double kappa = 0.0;       // thermal diffusivity (Boussinesq only)
    NoiseCoefficients theta = NoiseCoefficients::cutoff(1.0);
    double dt = 1e-3;
    double t_final = 1.0;
    StochasticScheme scheme = StochasticScheme::ExponentialEM;
    bool include_nonlinear = true; // linear-advection test mode when false
    bool zero_velocity_hook = false; // test hook: u := 0 (keeps the transport noise)
};

// Modes k with theta_k != 0 and |k| <= 2N; G_N^k vanishes beyond 2N, so this
// finite set carries the whole noise without approximation.
std::vector<Wavevector> effective_noise_set(const NoiseCoefficients& theta, int truncation);

// drift = -b_N(omega) + nu Delta omega (the Ito form of the SQG system).
SpectralScalarField ito_drift_sqg(const SpectralScalarField& omega, const SdeConfig& cfg);

// (2 sqrt(nu)/||theta||_2) sum_k theta_k G_N^k(omega) dB^k for the given
// increments; throws if an in-support mode is missing.
SpectralScalarField diffusion_sqg(const SpectralScalarField& omega, const SdeConfig& cfg,
                                  const std::map<Wavevector, double>& increments);

// One time step of the configured scheme; the driver supplies the increments
// for step index n. Throws TrajectoryAbort on non-finite state.
State step(const State& state, const SdeConfig& cfg, const BrownianDriver& driver,
           std::int64_t n);

// Full trajectory with recording; checks the dt stability bound (explicit
// schemes) or the advective CFL estimate (exponential scheme, refreshed every
// 100 steps).
TrajectoryRecord simulate(const SdeConfig& cfg, const State& initial, const BrownianDriver& driver,
                          const RecordingPlan& plan, const RecordObserver& observer = nullptr);

// Explicit-scheme stability bound dt <= 0.5 / (4 pi^2 N^2 (nu + kappa)).
double explicit_stability_bound(int truncation, double nu, double kappa);

// Advective CFL bound dt <= 0.1 / (2 pi N max|u|) used by exponential schemes.
double advective_cfl_bound(int truncation, double max_velocity);

// Sup-norm estimate of the velocity field induced by omega.
double max_velocity_estimate(const SpectralScalarField& omega);

} // namespace sqg
