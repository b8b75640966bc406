#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sqg/noise.hpp"

using namespace sqg;

TEST_CASE("cutoff support counts") {
    CHECK(NoiseCoefficients::cutoff(1.0).support().size() == 4);
    CHECK(NoiseCoefficients::cutoff(1.0).l2_norm() == doctest::Approx(2.0));
    CHECK(NoiseCoefficients::cutoff(2.0).support().size() == 12);
    // (1,1) has |k| = sqrt(2) <= 1.5, so the support grows to 8 modes.
    CHECK(NoiseCoefficients::cutoff(1.5).support().size() == 8);
    CHECK_THROWS_AS(NoiseCoefficients::cutoff(0.5), std::invalid_argument);
}

TEST_CASE("power family values") {
    const auto theta = NoiseCoefficients::power(2.0, 1.0);
    CHECK(theta.value({1, 0}) == doctest::Approx(1.0));
    CHECK(theta.value({1, 1}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(theta.value({2, 0}) == doctest::Approx(0.5));
    CHECK(theta.value({3, 0}) == 0.0);

    // alpha = 0 reduces to the cutoff family.
    const auto flat = NoiseCoefficients::power(3.0, 0.0);
    const auto cut = NoiseCoefficients::cutoff(3.0);
    for (const auto& k : cut.support()) CHECK(flat.value(k) == doctest::Approx(cut.value(k)));
    CHECK(flat.support().size() == cut.support().size());
}

TEST_CASE("scaling ratio") {
    CHECK(scaling_ratio(NoiseCoefficients::cutoff(1.0)) == doctest::Approx(0.5));
    CHECK(scaling_ratio(NoiseCoefficients::cutoff(2.0)) ==
          doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-14));

    SUBCASE("invariant under positive rescaling of theta") {
        auto theta = NoiseCoefficients::cutoff(1.0);
        for (double c : {0.1, 3.0, 250.0}) {
            auto scaled = NoiseCoefficients::cutoff(1.0);
            for (const auto& k : scaled.support()) scaled.override_mode(k, c);
            CHECK(scaling_ratio(scaled) == doctest::Approx(scaling_ratio(theta)).epsilon(1e-14));
        }
    }

    SUBCASE("cutoff ratio equals 1/sqrt(count) and decreases strictly in N") {
        double prev = 2.0;
        for (int n = 1; n <= 64; ++n) {
            const double ratio = scaling_ratio(NoiseCoefficients::cutoff(n));
            const double expected = 1.0 / std::sqrt(static_cast<double>(lattice_ball_count(n)));
            CHECK(ratio == doctest::Approx(expected).epsilon(1e-13));
            CHECK(ratio < prev);
            prev = ratio;
        }
    }

    SUBCASE("power family: decreasing for small alpha, plateau for large alpha") {
        for (double alpha : {0.0, 0.5}) {
            double prev = 2.0;
            for (int r = 2; r <= 32; r *= 2) {
                const double ratio = scaling_ratio(NoiseCoefficients::power(r, alpha));
                CHECK(ratio < prev);
                prev = ratio;
            }
        }
        // alpha = 3: ||theta||_2 converges, the ratio stalls; the report must
        // expose this rather than hide it.
        const double r16 = scaling_ratio(NoiseCoefficients::power(16.0, 3.0));
        const double r32 = scaling_ratio(NoiseCoefficients::power(32.0, 3.0));
        CHECK(r32 / r16 > 0.95);
    }

    SUBCASE("zero theta rejected") {
        auto theta = NoiseCoefficients::cutoff(1.0);
        for (const auto& k : theta.support()) theta.override_mode(k, 0.0);
        CHECK_THROWS_AS(scaling_ratio(theta), std::invalid_argument);
    }
}

TEST_CASE("symmetry validation") {
    CHECK(validate_symmetry(NoiseCoefficients::cutoff(3.0)).ok);
    CHECK(validate_symmetry(NoiseCoefficients::power(5.0, 0.7)).ok);

    auto broken = NoiseCoefficients::cutoff(2.0);
    broken.override_mode({0, 1}, 2.0); // theta(1,0) = 1 stays
    const auto report = validate_symmetry(broken);
    CHECK_FALSE(report.ok);
    CHECK(report.offending_shell == doctest::Approx(1.0));
}
