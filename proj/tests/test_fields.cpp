#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "sqg/field.hpp"
#include "sqg/transform.hpp"

using namespace sqg;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralScalarField single_mode(int n, Wavevector k, double c = 1.0) {
    SpectralScalarField f(n);
    f.set_coeff(k, c);
    return f;
}
} // namespace

TEST_CASE("field type invariants") {
    SpectralScalarField f(4);
    CHECK_THROWS_AS(f.set_coeff({0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f.set_coeff({4, 4}, 1.0), std::invalid_argument); // |k| > 4
    f.set_coeff({3, 2}, 2.0);
    CHECK(f.coeff({3, 2}) == 2.0);
    CHECK(f.coeff({4, 4}) == 0.0);
}

TEST_CASE("lambda power") {
    const auto f = single_mode(4, {1, 0});
    CHECK(lambda_power(f, 0.0).coeff({1, 0}) == doctest::Approx(1.0));
    CHECK(lambda_power(f, 1.0).coeff({1, 0}) == doctest::Approx(kTwoPi).epsilon(1e-15));

    SUBCASE("semigroup: half twice equals one") {
        const auto g = random_field(8, 8.0, 11, 1.0);
        const auto twice = lambda_power(lambda_power(g, 0.5), 0.5);
        const auto once = lambda_power(g, 1.0);
        CHECK((twice - once).l2_norm() <= 1e-12 * once.l2_norm());
    }
    SUBCASE("lambda squared equals minus laplacian") {
        const auto g = random_field(6, 6.0, 12, 1.0);
        const auto lhs = lambda_power(g, 2.0);
        auto rhs = laplacian(g);
        rhs *= -1.0;
        CHECK((lhs - rhs).l2_norm() <= 1e-12 * lhs.l2_norm());
    }
}

TEST_CASE("velocity from scalar") {
    SUBCASE("single mode closed form") {
        const auto u = velocity_from_scalar(single_mode(2, {1, 0}));
        CHECK(u.x1.coeff({-1, 0}) == doctest::Approx(0.0));
        CHECK(u.x2.coeff({-1, 0}) == doctest::Approx(1.0));
        CHECK(u.x1.l2_norm() == doctest::Approx(0.0));
    }
    SUBCASE("zero maps to zero") {
        const auto u = velocity_from_scalar(SpectralScalarField(3));
        CHECK(u.x1.l2_norm() + u.x2.l2_norm() == 0.0);
    }
    SUBCASE("isometry and zero spectral divergence on random data") {
        const auto omega = random_field(8, 8.0, 13, 1.0);
        const auto u = velocity_from_scalar(omega);
        const double unorm = std::sqrt(u.x1.l2_norm_sq() + u.x2.l2_norm_sq());
        CHECK(unorm == doctest::Approx(omega.l2_norm()).epsilon(1e-12));
        const auto div = partial_derivative(u.x1, 0) + partial_derivative(u.x2, 1);
        CHECK(div.l2_norm() <= 1e-12 * omega.l2_norm());
    }
}

TEST_CASE("galerkin projection") {
    const auto f = random_field(8, 8.0, 14, 1.0);
    SUBCASE("identity for M >= N") {
        const auto g = galerkin_project(f, 10);
        f.for_each([&](Wavevector k, double v) { CHECK(g.coeff(k) == v); });
    }
    SUBCASE("drops high modes") {
        CHECK(galerkin_project(single_mode(4, {3, 0}), 2).l2_norm() == 0.0);
    }
    SUBCASE("idempotent") {
        const auto once = galerkin_project(f, 3);
        const auto twice = galerkin_project(once, 3);
        CHECK((once - twice).l2_norm() == 0.0);
    }
    SUBCASE("self-adjoint: <Pi_2 f, g> = <f, Pi_2 g>") {
        const auto g = random_field(8, 8.0, 15, 1.0);
        const auto embed = [](const SpectralScalarField& h) { return galerkin_project(h, 8); };
        const double lhs = embed(galerkin_project(f, 2)).inner(g);
        const double rhs = f.inner(embed(galerkin_project(g, 2)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("sobolev norms") {
    CHECK(sobolev_norm(single_mode(2, {1, 0}), 3.7) == doctest::Approx(1.0));
    CHECK(sobolev_norm(single_mode(2, {1, 0}), -2.2) == doctest::Approx(1.0));
    CHECK(sobolev_norm(single_mode(4, {2, 0}), -1.0) == doctest::Approx(0.5));
    const auto f = random_field(8, 8.0, 16, 1.0);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(f.l2_norm()).epsilon(1e-13));
    // |k| >= 1 on the nonzero lattice makes H^{-delta} weaker than L2.
    CHECK(sobolev_norm(f, -0.5) <= f.l2_norm());
    // The gradient norm carries the 2 pi; the Sobolev weight does not.
    CHECK(grad_l2_norm(single_mode(2, {1, 0})) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(sobolev_norm(single_mode(2, {1, 0}), 1.0) == doctest::Approx(1.0));
}

TEST_CASE("grid transform round trip") {
    const auto f = random_field(8, 8.0, 17, 1.0);
    for (int side : {17, 20, 27, 50}) {
        SpectralTransform& tr = transform_for(side);
        const auto grid = tr.to_grid(f);
        const auto back = tr.from_grid(grid, 8);
        CHECK((back - f).l2_norm() <= 1e-12 * f.l2_norm());
    }
}

TEST_CASE("grid values match direct evaluation") {
    const auto f = random_field(4, 4.0, 18, 1.0);
    const int side = 12;
    SpectralTransform& tr = transform_for(side);
    const auto grid = tr.to_grid(f);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            const double direct = eval_at(f, static_cast<double>(i) / side,
                                          static_cast<double>(j) / side);
            CHECK(grid[static_cast<std::size_t>(i) * side + j] ==
                  doctest::Approx(direct).epsilon(1e-11));
        }
}

TEST_CASE("partial derivative matches the eigenrelation") {
    const auto f = single_mode(3, {2, -1});
    const auto d1 = partial_derivative(f, 0);
    // grad e_k = 2 pi k e_{-k}
    CHECK(d1.coeff({-2, 1}) == doctest::Approx(kTwoPi * 2.0).epsilon(1e-14));
    CHECK(partial_derivative(f, 1).coeff({-2, 1}) ==
          doctest::Approx(-kTwoPi).epsilon(1e-14));
}
