#include "sqg/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqg {

namespace {
void require_radius(double radius) {
    if (radius < 1.0)
        throw std::invalid_argument("noise support radius must be >= 1 (empty support otherwise)");
}
} // namespace

NoiseCoefficients NoiseCoefficients::cutoff(double radius) {
    require_radius(radius);
    NoiseCoefficients theta;
    theta.support_radius_ = radius;
    theta.family_ = "cutoff";
    for_each_lattice_point(radius, [&](Wavevector k) { theta.shells_[k.norm_sq()] = 1.0; });
    return theta;
}

NoiseCoefficients NoiseCoefficients::power(double radius, double alpha) {
    require_radius(radius);
    if (alpha < 0.0) throw std::invalid_argument("power family requires alpha >= 0");
    NoiseCoefficients theta;
    theta.support_radius_ = radius;
    theta.family_ = "power";
    theta.alpha_ = alpha;
    for_each_lattice_point(radius, [&](Wavevector k) {
        theta.shells_[k.norm_sq()] = std::pow(k.norm(), -alpha);
    });
    return theta;
}

double NoiseCoefficients::value(const Wavevector& k) const {
    if (auto it = overrides_.find(k); it != overrides_.end()) return it->second;
    if (auto it = shells_.find(k.norm_sq()); it != shells_.end()) return it->second;
    return 0.0;
}

double NoiseCoefficients::l2_norm() const {
    double sum = 0.0;
    for_each_lattice_point(support_radius_, [&](Wavevector k) {
        const double v = value(k);
        sum += v * v;
    });
    return std::sqrt(sum);
}

double NoiseCoefficients::linf_norm() const {
    double m = 0.0;
    for_each_lattice_point(support_radius_, [&](Wavevector k) {
        m = std::max(m, std::abs(value(k)));
    });
    return m;
}

std::vector<Wavevector> NoiseCoefficients::support(double radius_cap) const {
    const double r = radius_cap > 0.0 ? std::min(radius_cap, support_radius_) : support_radius_;
    std::vector<Wavevector> modes;
    for_each_lattice_point(r, [&](Wavevector k) {
        if (value(k) != 0.0) modes.push_back(k);
    });
    return modes;
}

void NoiseCoefficients::override_mode(const Wavevector& k, double value) {
    if (k.is_zero()) throw std::invalid_argument("k = 0 has no noise coefficient");
    overrides_[k] = value;
    support_radius_ = std::max(support_radius_, k.norm());
}

double scaling_ratio(const NoiseCoefficients& theta) {
    const double l2 = theta.l2_norm();
    if (l2 <= 0.0) throw std::invalid_argument("scaling ratio undefined for zero theta");
    return theta.linf_norm() / l2;
}

SymmetryReport validate_symmetry(const NoiseCoefficients& theta) {
    SymmetryReport report;
    std::map<std::int64_t, std::pair<Wavevector, double>> seen;
    bool done = false;
    for_each_lattice_point(theta.support_radius(), [&](Wavevector k) {
        if (done) return;
        const double v = theta.value(k);
        auto [it, inserted] = seen.emplace(k.norm_sq(), std::make_pair(k, v));
        if (!inserted && it->second.second != v) {
            report.ok = false;
            report.offending_shell = k.norm();
            std::ostringstream os;
            os << "shell |k| = " << report.offending_shell << ": theta(" << it->second.first.k1
               << "," << it->second.first.k2 << ") = " << it->second.second << " but theta("
               << k.k1 << "," << k.k2 << ") = " << v;
            report.detail = os.str();
            done = true;
        }
    });
    return report;
}

} // namespace sqg
