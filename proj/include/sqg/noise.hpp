#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqg/lattice.hpp"

namespace sqg {

// Radially symmetric noise coefficients theta with finite support.
// Values are stored per shell (keyed by |k|^2), which makes the symmetry
// condition theta_k = theta_l for |k| = |l| hold by construction. A per-mode
// override path exists solely to build negative test cases.
class NoiseCoefficients {
  public:
    // theta_k = 1 on 0 < |k| <= radius.
    static NoiseCoefficients cutoff(double radius);
    // theta_k = |k|^{-alpha} on 0 < |k| <= radius.
    static NoiseCoefficients power(double radius, double alpha);

    double value(const Wavevector& k) const;
    double support_radius() const { return support_radius_; }

    double l2_norm() const;
    double linf_norm() const;

    // Support modes in deterministic order, optionally clipped to |k| <= cap.
    std::vector<Wavevector> support(double radius_cap = 0.0) const;

    // Breaks radial symmetry for one mode; for negative tests only.
    void override_mode(const Wavevector& k, double value);
    bool has_overrides() const { return !overrides_.empty(); }

    std::string family() const { return family_; }
    double alpha() const { return alpha_; }

  private:
    NoiseCoefficients() = default;

    std::map<std::int64_t, double> shells_; // |k|^2 -> theta value
    std::map<Wavevector, double> overrides_;
    double support_radius_ = 0.0;
    std::string family_;
    double alpha_ = 0.0;
};

// epsilon = ||theta||_{l-inf} / ||theta||_{l2} in (0, 1]. Throws on zero theta.
double scaling_ratio(const NoiseCoefficients& theta);

struct SymmetryReport {
    bool ok = true;
    double offending_shell = 0.0; // |k| of the first shell whose entries differ
    std::string detail;
};

// Exact (zero-tolerance) check that same-norm entries are equal.
SymmetryReport validate_symmetry(const NoiseCoefficients& theta);

} // namespace sqg
