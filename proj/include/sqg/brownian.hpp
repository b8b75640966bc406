#pragma once

#include <cstdint>

#include "sqg/lattice.hpp"

namespace sqg {

// Counter-based generator: a splitmix64 chain over the tuple
// (seed, sample_index, k1, k2, step) feeding one Box-Muller normal. Every draw
// is a pure function of its counters, so trajectories are reproducible and
// ensemble members independent by construction, regardless of thread count.
std::uint64_t splitmix64(std::uint64_t x);

double counter_gaussian(std::uint64_t seed, std::uint64_t sample_index, std::int64_t k1,
                        std::int64_t k2, std::int64_t step);

class BrownianDriver {
  public:
    BrownianDriver(std::uint64_t seed, std::uint64_t sample_index)
        : seed_(seed), sample_index_(sample_index) {}

    // Standard normal for mode k at step n.
    double gaussian(const Wavevector& k, std::int64_t step) const {
        return counter_gaussian(seed_, sample_index_, k.k1, k.k2, step);
    }

    // Brownian increment Delta B^k_n ~ N(0, dt).
    double increment(const Wavevector& k, std::int64_t step, double dt) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t sample_index() const { return sample_index_; }

  private:
    std::uint64_t seed_;
    std::uint64_t sample_index_;
};

} // namespace sqg
