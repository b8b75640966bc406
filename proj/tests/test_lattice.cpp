#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "sqg/lattice.hpp"
#include "sqg/noise.hpp"

using namespace sqg;

namespace {

// Trapezoid rule on a uniform grid; exact for trig polynomials when the grid
// side exceeds the integrand bandwidth.
double quad_inner(const Wavevector& a, const Wavevector& b, int grid = 64) {
    double sum = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double x1 = static_cast<double>(i) / grid;
            const double x2 = static_cast<double>(j) / grid;
            sum += basis_eval(a, x1, x2) * basis_eval(b, x1, x2);
        }
    return sum / (grid * grid);
}

double quad_sigma_inner(const Wavevector& a, const Wavevector& b, int grid = 64) {
    double sum = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double x1 = static_cast<double>(i) / grid;
            const double x2 = static_cast<double>(j) / grid;
            const auto sa = sigma_eval(a, x1, x2);
            const auto sb = sigma_eval(b, x1, x2);
            sum += sa[0] * sb[0] + sa[1] * sb[1];
        }
    return sum / (grid * grid);
}

} // namespace

TEST_CASE("basis point values") {
    CHECK(basis_eval({1, 0}, 0.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(basis_eval({-1, 0}, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(basis_eval({0, 0}, 0.1, 0.2), std::invalid_argument);
}

TEST_CASE("basis orthonormality via quadrature") {
    const Wavevector modes[] = {{1, 0}, {0, 1}, {1, 1}, {2, -1}, {-3, 1}, {-1, 0}, {0, -2}};
    for (const auto& a : modes) {
        for (const auto& b : modes) {
            const double expected = (a == b) ? 1.0 : 0.0;
            CHECK(quad_inner(a, b) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis split covers the lattice") {
    for_each_lattice_point(5.0, [](Wavevector k) {
        CHECK(in_positive_half(k) != in_positive_half(-k));
    });
}

TEST_CASE("sigma values and divergence-free structure") {
    const auto s = sigma_eval({1, 0}, 0.0, 0.0);
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

    // k-perp . k = 0 symbolically on the integer lattice.
    for_each_lattice_point(6.0, [](Wavevector k) {
        CHECK(k.perp().k1 * k.k1 + k.perp().k2 * k.k2 == 0);
    });

    CHECK(quad_sigma_inner({1, 0}, {0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(quad_sigma_inner({1, 0}, {1, 0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("derivative coefficients") {
    const auto d10 = derivative_coefficient({1, 0});
    CHECK(d10.laplacian_eigenvalue ==
          doctest::Approx(-4.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
    CHECK(d10.paired_mode == Wavevector{-1, 0});
    const auto d11 = derivative_coefficient({1, 1});
    CHECK(d11.laplacian_eigenvalue ==
          doctest::Approx(-8.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("gradient matches a high-order finite-difference oracle") {
    // 6th-order central differences on a 256^2 grid.
    const int grid = 256;
    const double h = 1.0 / grid;
    const double twopi = 2.0 * std::numbers::pi;
    for_each_lattice_point(4.0, [&](Wavevector k) {
        double max_rel = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double x1 = (i * 37 % grid) * h;
            const double x2 = (i * 61 % grid) * h;
            auto f = [&](double a, double b) { return basis_eval(k, a, b); };
            const double fd1 = (45.0 * (f(x1 + h, x2) - f(x1 - h, x2)) -
                                9.0 * (f(x1 + 2 * h, x2) - f(x1 - 2 * h, x2)) +
                                (f(x1 + 3 * h, x2) - f(x1 - 3 * h, x2))) /
                               (60.0 * h);
            const double fd2 = (45.0 * (f(x1, x2 + h) - f(x1, x2 - h)) -
                                9.0 * (f(x1, x2 + 2 * h) - f(x1, x2 - 2 * h)) +
                                (f(x1, x2 + 3 * h) - f(x1, x2 - 3 * h))) /
                               (60.0 * h);
            // Spectral: grad e_k = 2 pi k e_{-k}.
            const double e_minus = basis_eval(-k, x1, x2);
            const double g1 = twopi * k.k1 * e_minus;
            const double g2 = twopi * k.k2 * e_minus;
            const double scale = twopi * k.norm() * std::sqrt(2.0);
            max_rel = std::max(max_rel, std::abs(fd1 - g1) / scale);
            max_rel = std::max(max_rel, std::abs(fd2 - g2) / scale);
        }
        CHECK(max_rel <= 1e-6);
    });
}

TEST_CASE("tensor identity") {
    SUBCASE("unit shell gives 2 I") {
        const auto theta = NoiseCoefficients::cutoff(1.0);
        const auto m = tensor_identity_sum(theta, 0.3, 0.9);
        CHECK(m[0][0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(m[1][1] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(m[0][1] == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("radius 3 gives half the mode count") {
        const auto theta = NoiseCoefficients::cutoff(3.0);
        CHECK(lattice_ball_count(3.0) == 28);
        const auto m = tensor_identity_sum(theta, 0.3, 0.7);
        CHECK(m[0][0] == doctest::Approx(14.0).epsilon(1e-13));
        CHECK(m[1][1] == doctest::Approx(14.0).epsilon(1e-13));
        CHECK(std::abs(m[0][1]) <= 1e-12);
    }
    SUBCASE("max operator-norm deviation on a 16x16 grid, radial power family") {
        const auto theta = NoiseCoefficients::power(5.0, 0.7);
        const double target = 0.5 * theta.l2_norm() * theta.l2_norm();
        double worst = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                auto m = tensor_identity_sum(theta, i / 16.0, j / 16.0);
                m[0][0] -= target;
                m[1][1] -= target;
                const double dev = std::sqrt(m[0][0] * m[0][0] + m[0][1] * m[0][1] +
                                             m[1][0] * m[1][0] + m[1][1] * m[1][1]);
                worst = std::max(worst, dev);
            }
        CHECK(worst <= 1e-10);
    }
    SUBCASE("rejects non-radial theta") {
        auto theta = NoiseCoefficients::cutoff(2.0);
        theta.override_mode({1, 0}, 2.0);
        CHECK_THROWS_AS(tensor_identity_sum(theta, 0.1, 0.1), std::invalid_argument);
    }
}
