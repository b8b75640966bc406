#pragma once

#include "sqg/sde.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

enum class DeterministicScheme { ExponentialRk2, ExplicitEuler };

struct DeterministicConfig {
    Equation equation = Equation::Sqg;
    int truncation = 8;
    double nu = 0.1;
    double kappa = 0.0;
    double dt = 1e-3;
    double t_final = 1.0;
    DeterministicScheme scheme = DeterministicScheme::ExponentialRk2;
    bool include_nonlinear = true;
};

// Dissipative SQG: d omega/dt = -b_N(omega) + nu Delta omega. The nonlinearity
// is the same advect() used by the stochastic system, so discrepancies in the
// scaling experiment cannot come from differing discretizations.
TrajectoryRecord solve_sqg(const SpectralScalarField& omega0, const DeterministicConfig& cfg,
                           const RecordingPlan& plan, const RecordObserver& observer = nullptr);

// Viscous Boussinesq: d
//   xi:    -h_N(xi) + (kappa + nu) Delta xi
//   omega: -b_N(omega) + d1 xi + nu Delta omega
TrajectoryRecord solve_boussinesq(const SpectralScalarField& xi0,
                                  const SpectralScalarField& omega0,
                                  const DeterministicConfig& cfg, const RecordingPlan& plan,
                                  const RecordObserver& observer = nullptr);

// Gap between two trajectories with the Gronwall envelope
// gap^2(t) <= gap^2(0) exp(C * driver(t)), driver = int ||grad omega_A||^2
// (SQG) or int (||grad xi_A||^2 + ||grad omega_A||^2 + 1) (Boussinesq).
// With fitted_c <= 0 the constant is fitted from this pair (max log-ratio over
// the driver, plus 5% headroom) and reported; pass a previously fitted C to
// validate out-of-sample.
struct StabilityGapSeries {
    std::vector<double> times;
    std::vector<double> gap_sq;
    std::vector<double> envelope_sq;
    std::vector<double> driver;
    double fitted_c = 0.0;
    bool within_envelope = true;
    std::vector<double> violation_times;
    double terminal_gap = 0.0;
};
StabilityGapSeries stability_gap(const TrajectoryRecord& a, const TrajectoryRecord& b,
                                 Equation equation, double fitted_c = 0.0);

} // namespace sqg
