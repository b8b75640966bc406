#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

namespace sqg {

// Nonzero lattice point k in Z^2 \ {0}, indexing one real trigonometric mode.
struct Wavevector {
    int k1 = 0;
    int k2 = 0;

    constexpr bool operator==(const Wavevector&) const = default;

    constexpr Wavevector operator-() const { return {-k1, -k2}; }

    // k-perp = (k2, -k1); orthogonal to k by construction.
    constexpr Wavevector perp() const { return {k2, -k1}; }

    constexpr std::int64_t norm_sq() const {
        return static_cast<std::int64_t>(k1) * k1 + static_cast<std::int64_t>(k2) * k2;
    }
    double norm() const { return std::sqrt(static_cast<double>(norm_sq())); }

    constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }
};

// Total order used wherever a deterministic mode enumeration is required.
constexpr bool operator<(const Wavevector& a, const Wavevector& b) {
    return a.k1 != b.k1 ? a.k1 < b.k1 : a.k2 < b.k2;
}

// Half-lattice split: exactly one of k, -k is positive. Convention:
// Z2+ = {k1 > 0} u {k1 = 0, k2 > 0}; the cosine branch of the basis.
constexpr bool in_positive_half(const Wavevector& k) {
    return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0);
}

// e_k(x) = sqrt(2) cos(2 pi k.x) on Z2+, sqrt(2) sin(2 pi k.x) on Z2-.
// Orthonormal, zero-mean basis of L^2(T^2). Rejects k = 0.
double basis_eval(const Wavevector& k, double x1, double x2);

// sigma_k(x) = (k-perp / |k|) e_k(x); divergence-free since k-perp . k = 0.
std::array<double, 2> sigma_eval(const Wavevector& k, double x1, double x2);

// grad e_k = 2 pi k e_{-k} and Delta e_k = -4 pi^2 |k|^2 e_k, encoded as data.
struct DerivativeCoefficient {
    Wavevector paired_mode;                // -k
    std::array<double, 2> gradient_factor; // 2 pi k
    double laplacian_eigenvalue;           // -4 pi^2 |k|^2
};
DerivativeCoefficient derivative_coefficient(const Wavevector& k);

// Visits every lattice point with 0 < |k| <= radius in deterministic order.
void for_each_lattice_point(double radius, const std::function<void(Wavevector)>& fn);

// Number of lattice points with 0 < |k| <= radius.
std::int64_t lattice_ball_count(double radius);

class NoiseCoefficients;

using Matrix2 = std::array<std::array<double, 2>, 2>;

// sum_k theta_k^2 sigma_k(x) (x) sigma_k(x). For radially symmetric theta this
// equals (1/2) ||theta||_{l2}^2 I_2 at every x; throws if theta is not radial.
Matrix2 tensor_identity_sum(const NoiseCoefficients& theta, double x1, double x2);

} // namespace sqg
