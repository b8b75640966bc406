#include "sqg/brownian.hpp"

#include <cmath>
#include <numbers>

namespace sqg {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {
std::uint64_t absorb(std::uint64_t state, std::uint64_t value) {
    return splitmix64(state ^ value);
}

double to_unit(std::uint64_t bits) {
    // (0, 1): 53 mantissa bits, offset away from 0 so log() is safe.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}
} // namespace

double counter_gaussian(std::uint64_t seed, std::uint64_t sample_index, std::int64_t k1,
                        std::int64_t k2, std::int64_t step) {
    std::uint64_t s = splitmix64(seed);
    s = absorb(s, sample_index);
    s = absorb(s, static_cast<std::uint64_t>(k1));
    s = absorb(s, static_cast<std::uint64_t>(k2));
    s = absorb(s, static_cast<std::uint64_t>(step));
    const double u1 = to_unit(splitmix64(s ^ 0x2545f4914f6cdd1dULL));
    const double u2 = to_unit(splitmix64(s ^ 0x9e6c63d0a9c3f8e1ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double BrownianDriver::increment(const Wavevector& k, std::int64_t step, double dt) const {
    return gaussian(k, step) * std::sqrt(dt);
}

} // namespace sqg
