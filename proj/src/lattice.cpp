#include "sqg/lattice.hpp"

#include <numbers>
#include <stdexcept>

#include "sqg/noise.hpp"

namespace sqg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

void require_nonzero(const Wavevector& k) {
    if (k.is_zero()) throw std::invalid_argument("wavevector k = 0 is not a basis index");
}
} // namespace

double basis_eval(const Wavevector& k, double x1, double x2) {
    require_nonzero(k);
    const double phase = kTwoPi * (k.k1 * x1 + k.k2 * x2);
    return in_positive_half(k) ? kSqrt2 * std::cos(phase) : kSqrt2 * std::sin(phase);
}

std::array<double, 2> sigma_eval(const Wavevector& k, double x1, double x2) {
    require_nonzero(k);
    const double e = basis_eval(k, x1, x2);
    const double inv_norm = 1.0 / k.norm();
    const Wavevector p = k.perp();
    return {p.k1 * inv_norm * e, p.k2 * inv_norm * e};
}

DerivativeCoefficient derivative_coefficient(const Wavevector& k) {
    require_nonzero(k);
    return DerivativeCoefficient{
        -k,
        {kTwoPi * k.k1, kTwoPi * k.k2},
        -4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(k.norm_sq()),
    };
}

void for_each_lattice_point(double radius, const std::function<void(Wavevector)>& fn) {
    if (radius < 0.0) return;
    const int r = static_cast<int>(std::floor(radius));
    const auto r2 = static_cast<std::int64_t>(std::floor(radius * radius + 1e-9));
    for (int k1 = -r; k1 <= r; ++k1) {
        for (int k2 = -r; k2 <= r; ++k2) {
            const Wavevector k{k1, k2};
            if (!k.is_zero() && k.norm_sq() <= r2) fn(k);
        }
    }
}

std::int64_t lattice_ball_count(double radius) {
    std::int64_t n = 0;
    for_each_lattice_point(radius, [&](Wavevector) { ++n; });
    return n;
}

Matrix2 tensor_identity_sum(const NoiseCoefficients& theta, double x1, double x2) {
    const auto report = validate_symmetry(theta);
    if (!report.ok)
        throw std::invalid_argument("tensor identity requires radial symmetry: " + report.detail);
    Matrix2 m{{{0.0, 0.0}, {0.0, 0.0}}};
    for_each_lattice_point(theta.support_radius(), [&](Wavevector k) {
        const double t = theta.value(k);
        if (t == 0.0) return;
        const auto s = sigma_eval(k, x1, x2);
        const double w = t * t;
        m[0][0] += w * s[0] * s[0];
        m[0][1] += w * s[0] * s[1];
        m[1][0] += w * s[1] * s[0];
        m[1][1] += w * s[1] * s[1];
    });
    return m;
}

} // namespace sqg
