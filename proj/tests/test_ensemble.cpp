#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sqg/ensemble.hpp"

using namespace sqg;

namespace {

SpectralScalarField single_mode(int n, Wavevector k, double c = 1.0) {
    SpectralScalarField f(n);
    f.set_coeff(k, c);
    return f;
}

EnsembleSpec small_spec() {
    EnsembleSpec spec;
    spec.base.equation = Equation::Sqg;
    spec.base.truncation = 8;
    spec.base.nu = 0.2;
    spec.base.dt = 5e-4;
    spec.base.t_final = 0.2;
    spec.base.scheme = StochasticScheme::ExponentialEM;
    spec.theta_family = {NoiseCoefficients::cutoff(2.0), NoiseCoefficients::cutoff(4.0)};
    spec.sample_count = 4;
    spec.seed = 2024;
    spec.delta = 0.5;
    spec.record_count = 21;
    spec.threads = 2;
    return spec;
}

} // namespace

TEST_CASE("law distance") {
    CHECK(law_distance(std::vector<double>{1.0, 2.0, 3.0}, std::vector<double>{1.0, 2.0, 3.0}) ==
          doctest::Approx(0.0));
    CHECK(law_distance(std::vector<double>{0.0}, std::vector<double>{1.0}) ==
          doctest::Approx(1.0));
    // Unequal sizes via the quantile-function integral: W1({0}, {0,1}) = 1/2.
    CHECK(law_distance(std::vector<double>{0.0}, std::vector<double>{0.0, 1.0}) ==
          doctest::Approx(0.5));
    // Translation invariance of the shift.
    CHECK(law_distance(std::vector<double>{1.0, 5.0}, std::vector<double>{2.0, 6.0}) ==
          doctest::Approx(1.0));
}

TEST_CASE("deviation probability") {
    const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
    SUBCASE("epsilon above all distances") {
        const auto w = deviation_probability(d, 1.0);
        CHECK(w.p_hat == 0.0);
        CHECK(w.low == 0.0);
        CHECK(w.high > 0.0); // Wilson interval never collapses at p = 0
    }
    SUBCASE("epsilon zero with nonzero noise") {
        const auto w = deviation_probability(d, 0.0);
        CHECK(w.p_hat == 1.0);
        CHECK(w.high == 1.0);
        CHECK(w.low < 1.0);
    }
    SUBCASE("interior") {
        const auto w = deviation_probability(d, 0.25);
        CHECK(w.p_hat == doctest::Approx(0.5));
        CHECK(w.low < 0.5);
        CHECK(w.high > 0.5);
    }
    CHECK_THROWS_AS(deviation_probability(std::vector<double>{0.1}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("trend fit") {
    SUBCASE("exact proportionality gives slope one") {
        const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
        const auto fit = fit_trend(eps, eps);
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.slope_low <= 1.0);
        CHECK(fit.slope_high >= 1.0);
    }
    SUBCASE("constant distances give slope zero") {
        const std::vector<double> eps{0.5, 0.25, 0.125};
        const std::vector<double> d{0.3, 0.3, 0.3};
        CHECK(fit_trend(eps, d).slope == doctest::Approx(0.0));
    }
    SUBCASE("degenerate family rejected") {
        const std::vector<double> eps{0.5, 0.5, 0.5};
        const std::vector<double> d{0.1, 0.2, 0.3};
        CHECK_THROWS_AS(fit_trend(eps, d), std::invalid_argument);
    }
}

TEST_CASE("run_ensemble basics") {
    EnsembleSpec spec = small_spec();
    const State init(single_mode(8, {1, 0}) + single_mode(8, {0, 1}));

    SUBCASE("zero initial data gives zero distances") {
        EnsembleSpec zspec = spec;
        zspec.deviation_epsilon = 0.1;
        const State zero(SpectralScalarField(8));
        const auto limit = limit_snapshots(zspec, zero);
        const auto row = run_ensemble(zspec, zspec.theta_family[0], zero, limit);
        for (const auto& s : row.samples) CHECK(s.sup_distance == 0.0);
    }
    SUBCASE("vanishing noise intensity collapses the ensemble onto the limit") {
        EnsembleSpec quiet = spec;
        quiet.base.nu = 1e-8;
        quiet.deviation_epsilon = 0.1;
        const auto limit = limit_snapshots(quiet, init);
        const auto row = run_ensemble(quiet, quiet.theta_family[0], init, limit);
        for (const auto& s : row.samples) CHECK(s.sup_distance <= 1e-3);
    }
    SUBCASE("sample slots are keyed by index, independent of thread count") {
        EnsembleSpec one = spec;
        one.threads = 1;
        EnsembleSpec four = spec;
        four.threads = 4;
        const auto limit = limit_snapshots(spec, init);
        const auto a = run_ensemble(one, spec.theta_family[0], init, limit);
        const auto b = run_ensemble(four, spec.theta_family[0], init, limit);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i)
            CHECK(a.samples[i].sup_distance == b.samples[i].sup_distance);
        CHECK(a.mean_distance == b.mean_distance);
        CHECK(a.law_distance == b.law_distance);
    }
}

TEST_CASE("distance recomputation from stored snapshots") {
    // D computed on the fly equals a brute-force recomputation from snapshots.
    EnsembleSpec spec = small_spec();
    spec.record_count = 6;
    const State init(single_mode(8, {1, 0}));
    const auto limit = limit_snapshots(spec, init);
    const auto row = run_ensemble(spec, spec.theta_family[0], init, limit);

    RecordingPlan plan;
    plan.record_count = spec.record_count;
    plan.snapshot_every_record = true;
    plan.observables = default_observables(8);
    SdeConfig cfg = spec.base;
    cfg.theta = spec.theta_family[0];
    for (int m = 0; m < spec.sample_count; ++m) {
        BrownianDriver driver(spec.seed, static_cast<std::uint64_t>(m));
        const auto rec = simulate(cfg, init, driver, plan);
        double sup = 0.0;
        for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
            const auto diff = rec.snapshots[i].field - limit[i].omega;
            sup = std::max(sup, sobolev_norm(diff, -spec.delta));
        }
        CHECK(std::abs(sup - row.samples[m].sup_distance) <= 1e-12);
    }
}

TEST_CASE("run_scaling validation and report shape") {
    EnsembleSpec spec = small_spec();
    const State init(single_mode(8, {1, 0}) + single_mode(8, {0, 1}));

    SUBCASE("family must have strictly decreasing ratios") {
        EnsembleSpec bad = spec;
        bad.theta_family = {NoiseCoefficients::cutoff(4.0), NoiseCoefficients::cutoff(2.0)};
        CHECK_THROWS_AS(run_scaling(bad, init), std::invalid_argument);
    }
    SUBCASE("needs at least two samples") {
        EnsembleSpec bad = spec;
        bad.sample_count = 1;
        CHECK_THROWS_AS(run_scaling(bad, init), std::invalid_argument);
    }
    SUBCASE("delta constrained to (0,1)") {
        EnsembleSpec bad = spec;
        bad.delta = 1.5;
        CHECK_THROWS_AS(run_scaling(bad, init), std::invalid_argument);
    }
    SUBCASE("report carries one row per family member and the auto epsilon") {
        spec.theta_family = {NoiseCoefficients::cutoff(1.0), NoiseCoefficients::cutoff(2.0),
                             NoiseCoefficients::cutoff(4.0)};
        const auto report = run_scaling(spec, init);
        CHECK(report.rows.size() == 3);
        CHECK(report.deviation_epsilon ==
              doctest::Approx(0.1 * sobolev_norm(init.omega, -0.5)));
        CHECK(report.fit.points == 3);
        for (const auto& row : report.rows) {
            CHECK(row.samples.size() == 4);
            CHECK(row.mean_distance > 0.0);
            CHECK(row.aborted_count == 0);
        }
        // Ratios decrease along the family by construction.
        CHECK(report.rows[0].ratio > report.rows[1].ratio);
        CHECK(report.rows[1].ratio > report.rows[2].ratio);
    }
}
