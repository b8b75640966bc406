#include "sqg/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqg/brownian.hpp"

namespace sqg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_truncation(const SpectralScalarField& a, const SpectralScalarField& b) {
    if (a.truncation() != b.truncation())
        throw std::invalid_argument("truncation mismatch between spectral fields");
}
} // namespace

SpectralScalarField::SpectralScalarField(int truncation) : truncation_(truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
    const std::size_t side = 2 * static_cast<std::size_t>(truncation) + 1;
    coef_.assign(side * side, 0.0);
}

double SpectralScalarField::coeff(const Wavevector& k) const {
    return in_ball(k) ? coef_[index(k)] : 0.0;
}

void SpectralScalarField::set_coeff(const Wavevector& k, double value) {
    if (k.is_zero()) throw std::invalid_argument("fields have zero mean: no k = 0 coefficient");
    if (!in_ball(k)) throw std::invalid_argument("mode outside the truncation ball");
    coef_[index(k)] = value;
}

void SpectralScalarField::add_coeff(const Wavevector& k, double value) {
    set_coeff(k, coeff(k) + value);
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& other) {
    require_same_truncation(*this, other);
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += other.coef_[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& other) {
    require_same_truncation(*this, other);
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= other.coef_[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double scale) {
    for (double& c : coef_) c *= scale;
    return *this;
}

void SpectralScalarField::axpy(double scale, const SpectralScalarField& other) {
    require_same_truncation(*this, other);
    for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += scale * other.coef_[i];
}

double SpectralScalarField::inner(const SpectralScalarField& other) const {
    require_same_truncation(*this, other);
    double sum = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i) sum += coef_[i] * other.coef_[i];
    return sum;
}

double SpectralScalarField::l2_norm_sq() const {
    double sum = 0.0;
    for (double c : coef_) sum += c * c;
    return sum;
}

double SpectralScalarField::l2_norm() const { return std::sqrt(l2_norm_sq()); }

bool SpectralScalarField::finite() const { return std::isfinite(l2_norm_sq()); }

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) {
    a += b;
    return a;
}

SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) {
    a -= b;
    return a;
}

SpectralScalarField operator*(double s, SpectralScalarField f) {
    f *= s;
    return f;
}

SpectralVectorField::SpectralVectorField(SpectralScalarField a, SpectralScalarField b)
    : x1(std::move(a)), x2(std::move(b)) {
    if (x1.truncation() != x2.truncation())
        throw std::invalid_argument("vector field components must share one truncation");
}

SpectralScalarField lambda_power(const SpectralScalarField& f, double s) {
    SpectralScalarField out(f.truncation());
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0) out.set_coeff(k, c * std::pow(kTwoPi * k.norm(), s));
    });
    return out;
}

SpectralScalarField laplacian(const SpectralScalarField& f) {
    SpectralScalarField out(f.truncation());
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0) out.set_coeff(k, c * derivative_coefficient(k).laplacian_eigenvalue);
    });
    return out;
}

SpectralScalarField partial_derivative(const SpectralScalarField& f, int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("axis must be 0 or 1");
    SpectralScalarField out(f.truncation());
    // d_i f at mode m collects 2 pi k_i from f's mode -m: grad e_k = 2 pi k e_{-k}.
    f.for_each([&](Wavevector k, double c) {
        if (c == 0.0) return;
        const double factor = kTwoPi * (axis == 0 ? k.k1 : k.k2);
        if (factor != 0.0) out.add_coeff(-k, factor * c);
    });
    return out;
}

SpectralVectorField velocity_from_scalar(const SpectralScalarField& omega) {
    SpectralVectorField u(omega.truncation());
    // Per mode: omega = e_k contributes -(k-perp/|k|) e_{-k}; written from the
    // receiving side, u_i at mode m picks (m-perp_i / |m|) omega_{-m}.
    omega.for_each([&](Wavevector k, double c) {
        if (c == 0.0) return;
        const Wavevector m = -k;
        const double inv_norm = 1.0 / m.norm();
        const Wavevector p = m.perp();
        u.x1.add_coeff(m, p.k1 * inv_norm * c);
        u.x2.add_coeff(m, p.k2 * inv_norm * c);
    });
    return u;
}

SpectralScalarField galerkin_project(const SpectralScalarField& f, int M) {
    if (M < 1) throw std::invalid_argument("projection order must be >= 1");
    SpectralScalarField out(M);
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0 && out.in_ball(k)) out.set_coeff(k, c);
    });
    return out;
}

double sobolev_norm(const SpectralScalarField& f, double s) {
    double sum = 0.0;
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0) sum += std::pow(static_cast<double>(k.norm_sq()), s) * c * c;
    });
    return std::sqrt(sum);
}

double grad_l2_norm(const SpectralScalarField& f) {
    double sum = 0.0;
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0) sum += kTwoPi * kTwoPi * static_cast<double>(k.norm_sq()) * c * c;
    });
    return std::sqrt(sum);
}

double eval_at(const SpectralScalarField& f, double x1, double x2) {
    double sum = 0.0;
    f.for_each([&](Wavevector k, double c) {
        if (c != 0.0) sum += c * basis_eval(k, x1, x2);
    });
    return sum;
}

SpectralScalarField random_field(int truncation, double radius, std::uint64_t seed,
                                 double l2_amplitude) {
    SpectralScalarField f(truncation);
    const double r = std::min(radius, static_cast<double>(truncation));
    for_each_lattice_point(r, [&](Wavevector k) {
        f.set_coeff(k, counter_gaussian(seed, 0, k.k1, k.k2, 0));
    });
    if (l2_amplitude > 0.0) {
        const double norm = f.l2_norm();
        if (norm > 0.0) f *= l2_amplitude / norm;
    }
    return f;
}

} // namespace sqg
