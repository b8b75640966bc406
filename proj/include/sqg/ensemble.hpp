#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqg/deterministic.hpp"
#include "sqg/sde.hpp"
#include "sqg/stats.hpp"

namespace sqg {

// Monte Carlo experiment across a family theta^N of noise coefficients. The
// stochastic runs and the deterministic limit share one Galerkin truncation N:
// the family index scales the noise, not the spatial resolution, which
// isolates the scaling effect the limit theorems describe.
struct EnsembleSpec {
    SdeConfig base;                               // N, nu, kappa, dt, t_final, scheme
    std::vector<NoiseCoefficients> theta_family;  // strictly decreasing scaling_ratio
    int sample_count = 2;
    std::uint64_t seed = 0;
    double delta = 0.5;             // H^{-delta} metric exponent
    double deviation_epsilon = 0.0; // <= 0: auto, 0.1 ||omega0||_{H^-delta}
    int record_count = 50;
    std::vector<Observable> observables; // empty: default set
    std::string law_observable = "e(1,0)";
    int threads = 0; // 0: hardware concurrency
    DeterministicScheme limit_scheme = DeterministicScheme::ExponentialRk2;
};

struct SampleOutcome {
    int sample_index = 0;
    bool aborted = false;
    std::string abort_reason;
    // sup over recorded times of the H^{-delta} distance to the limit (SQG);
    // product metric max(xi in discretized L2(0,T;L2), omega in sup H^{-delta})
    // for Boussinesq.
    double sup_distance = 0.0;
    std::map<std::string, double> terminal_observables;
};

struct FamilyRow {
    double support_radius = 0.0;
    double ratio = 0.0; // ||theta||_inf / ||theta||_2
    std::vector<SampleOutcome> samples;
    double mean_distance = 0.0;
    int aborted_count = 0;
    WilsonInterval deviation; // P(distance > deviation_epsilon)
    double law_distance = 0.0; // 1-Wasserstein between half-ensembles
};

struct ConvergenceReport {
    std::vector<FamilyRow> rows;
    LinearFit fit; // log D_N against log ratio
    double deviation_epsilon = 0.0;
    std::string law_observable;
};

// The deterministic limit fields at the recorded times (computed once per
// experiment; theta plays no role in the limit).
std::vector<State> limit_snapshots(const EnsembleSpec& spec, const State& initial);

// One ensemble at fixed theta against a precomputed limit trajectory.
FamilyRow run_ensemble(const EnsembleSpec& spec, const NoiseCoefficients& theta,
                       const State& initial, const std::vector<State>& limit);

// Full experiment: limit run, per-family ensembles, deviation probabilities,
// half-ensemble law distances and the log-log trend fit.
ConvergenceReport run_scaling(const EnsembleSpec& spec, const State& initial);

// p_hat = #{distance > epsilon} / M with a 95% Wilson interval.
WilsonInterval deviation_probability(std::span<const double> distances, double epsilon);

// Empirical 1-Wasserstein distance between the two sets of terminal
// observable values.
double law_distance(std::span<const double> half_a, std::span<const double> half_b);

// Least squares of log D against log ratio; rejects degenerate families.
LinearFit fit_trend(std::span<const double> ratios, std::span<const double> distances);

} // namespace sqg
