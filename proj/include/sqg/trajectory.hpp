#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

// State advanced by the steppers; xi present only for Boussinesq.
struct State {
    SpectralScalarField omega;
    std::optional<SpectralScalarField> xi;

    explicit State(SpectralScalarField w) : omega(std::move(w)) {}
    State(SpectralScalarField temperature, SpectralScalarField vorticity)
        : omega(std::move(vorticity)), xi(std::move(temperature)) {}
};

// Test functions paired against the solution at every recorded time.
struct Observable {
    std::string id;
    SpectralScalarField field;
};

struct RecordingPlan {
    int record_count = 50;                  // uniform recorded times, t = 0 and t_final included
    std::vector<double> snapshot_times;     // subset of recorded times to keep full fields at
    std::vector<Observable> observables;
    bool snapshot_every_record = false;     // keep fields at every recorded time
};

// Default observables: e(1,0), e(0,1), e(1,1) plus one fixed-seed random
// band-limited field, unit-normalized.
std::vector<Observable> default_observables(int truncation);

struct FieldSeries {
    std::string name;                        // "omega" or "xi"
    std::vector<double> l2;                  // ||f(t)||_{L2} at recorded times
    std::vector<double> grad_l2;             // ||grad f(t)||_{L2}
    std::vector<double> dissipation_integral; // int_0^t ||grad f||^2 ds (end-corrected trapezoid)
};

struct Snapshot {
    double time;
    std::string field_name;
    SpectralScalarField field;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<FieldSeries> fields;
    std::map<std::string, std::vector<double>> observables;
    std::vector<Snapshot> snapshots;
};

// Thrown when a trajectory produces a non-finite state; blow-up is reported,
// never clamped.
class TrajectoryAbort : public std::runtime_error {
  public:
    TrajectoryAbort(const std::string& what, std::int64_t step, double time)
        : std::runtime_error(what), step(step), time(time) {}
    std::int64_t step;
    double time;
};

// Called at every recorded time; index runs over the recording grid.
using RecordObserver = std::function<void(int record_index, double time, const State& state)>;

// Running integral of a sampled series with the Euler-Maclaurin endpoint
// correction; O(dt^4) for smooth integrands, needed by the energy-balance
// identities at their stated tolerances.
class CorrectedIntegral {
  public:
    explicit CorrectedIntegral(double dt) : dt_(dt) {}
    void push(double value);
    double value() const;

  private:
    double dt_;
    std::vector<double> head_; // first three samples
    double tail_[3] = {0, 0, 0};
    std::size_t count_ = 0;
    double trapezoid_ = 0.0;
    double last_ = 0.0;
};

} // namespace sqg
