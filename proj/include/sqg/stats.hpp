#pragma once

#include <span>
#include <vector>

namespace sqg {

struct WilsonInterval {
    double p_hat = 0.0;
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(int successes, int n);

// 1-Wasserstein distance between empirical distributions (sorted-sample L1
// form; the standard quantile-function integral handles unequal sizes).
double wasserstein1(std::vector<double> a, std::vector<double> b);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_low = 0.0;  // 95% CI
    double slope_high = 0.0;
    int points = 0;
};

// Least squares y ~ intercept + slope x with a t-based 95% CI on the slope.
// Throws on fewer than 3 points or degenerate x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace sqg
