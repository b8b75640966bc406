#include "sqg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

WilsonInterval wilson_interval(int successes, int n) {
    if (n <= 0) throw std::invalid_argument("Wilson interval needs n >= 1");
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample set");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // Integrate |Qa(u) - Qb(u)| over the merged quantile breakpoints.
    const std::size_t na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    double u = 0.0, total = 0.0;
    while (i < na && j < nb) {
        const double ua = static_cast<double>(i + 1) / na;
        const double ub = static_cast<double>(j + 1) / nb;
        const double next = std::min(ua, ub);
        total += (next - u) * std::abs(a[i] - b[j]);
        u = next;
        if (ua <= ub) ++i;
        if (ub <= ua) ++j;
    }
    return total;
}

namespace {
// Two-sided 95% Student t quantiles by degrees of freedom.
double t_quantile_95(int dof) {
    static const double table[] = {0,     12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                   2.306, 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
                                   2.120, 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069,
                                   2.064, 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (dof <= 0) throw std::invalid_argument("t quantile needs dof >= 1");
    if (dof <= 30) return table[dof];
    return 1.96;
}
} // namespace

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("linear fit needs >= 3 points");
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("degenerate fit: all x equal");

    LinearFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        sse += r * r;
    }
    const double sigma_sq = sse / (n - 2);
    const double se = std::sqrt(sigma_sq / sxx);
    const double t = t_quantile_95(n - 2);
    fit.slope_low = fit.slope - t * se;
    fit.slope_high = fit.slope + t * se;
    return fit;
}

} // namespace sqg
