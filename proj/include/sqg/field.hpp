#pragma once

#include <cstdint>
#include <vector>

#include "sqg/lattice.hpp"

namespace sqg {

// Zero-mean scalar field as a finite trigonometric sum: real coefficients of
// e_k over the Euclidean lattice ball 0 < |k| <= N. Stored densely over the
// (2N+1)^2 square; entries outside the ball stay zero.
class SpectralScalarField {
  public:
    explicit SpectralScalarField(int truncation);

    int truncation() const { return truncation_; }

    double coeff(const Wavevector& k) const;
    void set_coeff(const Wavevector& k, double value);
    void add_coeff(const Wavevector& k, double value);

    bool in_ball(const Wavevector& k) const {
        return !k.is_zero() &&
               k.norm_sq() <= static_cast<std::int64_t>(truncation_) * truncation_;
    }

    // Visits every in-ball mode (including zero coefficients), deterministic order.
    template <class F>
    void for_each(F&& fn) const {
        for (int k1 = -truncation_; k1 <= truncation_; ++k1)
            for (int k2 = -truncation_; k2 <= truncation_; ++k2) {
                const Wavevector k{k1, k2};
                if (in_ball(k)) fn(k, coef_[index(k)]);
            }
    }

    SpectralScalarField& operator+=(const SpectralScalarField& other);
    SpectralScalarField& operator-=(const SpectralScalarField& other);
    SpectralScalarField& operator*=(double scale);
    // this += scale * other; truncations must match.
    void axpy(double scale, const SpectralScalarField& other);

    double inner(const SpectralScalarField& other) const;
    double l2_norm() const;
    double l2_norm_sq() const;

    bool finite() const;

    const std::vector<double>& raw() const { return coef_; }
    std::vector<double>& raw() { return coef_; }
    std::size_t index(const Wavevector& k) const {
        const int side = 2 * truncation_ + 1;
        return static_cast<std::size_t>(k.k1 + truncation_) * side + (k.k2 + truncation_);
    }

  private:
    int truncation_;
    std::vector<double> coef_;
};

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator*(double s, SpectralScalarField f);

// Two components sharing one truncation.
struct SpectralVectorField {
    SpectralScalarField x1;
    SpectralScalarField x2;

    explicit SpectralVectorField(int truncation) : x1(truncation), x2(truncation) {}
    SpectralVectorField(SpectralScalarField a, SpectralScalarField b);
    int truncation() const { return x1.truncation(); }
};

// Lambda^s: coefficient of e_k multiplied by (2 pi |k|)^s. Well defined for any
// real s (k = 0 is absent by construction).
SpectralScalarField lambda_power(const SpectralScalarField& f, double s);

// Delta: multiplier -4 pi^2 |k|^2.
SpectralScalarField laplacian(const SpectralScalarField& f);

// d/dx_axis via grad e_k = 2 pi k e_{-k}; axis is 0 or 1.
SpectralScalarField partial_derivative(const SpectralScalarField& f, int axis);

// u = grad-perp(-Lambda^{-1} omega); divergence-free, L2 isometry.
SpectralVectorField velocity_from_scalar(const SpectralScalarField& omega);

// Pi_M: drops modes |k| > M. Result truncation is M.
SpectralScalarField galerkin_project(const SpectralScalarField& f, int M);

// ||f||_{H^s}^2 = sum |k|^{2s} <f, e_k>^2 (plain |k| weight, no 2 pi).
double sobolev_norm(const SpectralScalarField& f, double s);

// ||grad f||_{L2} = sqrt(sum (2 pi |k|)^2 <f, e_k>^2); the physical gradient.
double grad_l2_norm(const SpectralScalarField& f);

// Pointwise evaluation by direct summation (test-scale; O(modes) per point).
double eval_at(const SpectralScalarField& f, double x1, double x2);

// Band-limited field with i.i.d. standard normal coefficients on |k| <= radius,
// generated by the deterministic counter-based generator; amplitude rescales
// the result to the requested L2 norm when positive.
SpectralScalarField random_field(int truncation, double radius, std::uint64_t seed,
                                 double l2_amplitude = 0.0);

} // namespace sqg
