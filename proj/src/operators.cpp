#include "sqg/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sqg/transform.hpp"

namespace sqg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt2 = std::sqrt(2.0);

void require_same_truncation(const SpectralScalarField& a, const SpectralScalarField& b) {
    if (a.truncation() != b.truncation())
        throw std::invalid_argument("truncation mismatch between spectral fields");
}

// Dense complex Fourier coefficients c_m over the square |m_i| <= N, with
// c_{-m} = conj(c_m). Used by the brute-force convolution oracle and the
// commutator, where exactness matters more than speed.
struct ComplexModes {
    int n;
    std::vector<std::complex<double>> c;

    explicit ComplexModes(int trunc)
        : n(trunc), c(static_cast<std::size_t>(2 * trunc + 1) * (2 * trunc + 1)) {}

    std::size_t index(const Wavevector& k) const {
        const int side = 2 * n + 1;
        return static_cast<std::size_t>(k.k1 + n) * side + (k.k2 + n);
    }
    std::complex<double> at(const Wavevector& k) const { return c[index(k)]; }
    void add(const Wavevector& k, std::complex<double> v) { c[index(k)] += v; }
    bool in_square(const Wavevector& k) const {
        return std::abs(k.k1) <= n && std::abs(k.k2) <= n;
    }
};

ComplexModes to_complex(const SpectralScalarField& f) {
    ComplexModes cm(f.truncation());
    f.for_each([&](Wavevector k, double v) {
        if (v == 0.0 || !in_positive_half(k)) return;
        const double b = f.coeff(-k);
        cm.c[cm.index(k)] = {v * kInvSqrt2, b * kInvSqrt2};
        cm.c[cm.index(-k)] = {v * kInvSqrt2, -b * kInvSqrt2};
    });
    // Sine-only modes have zero cosine partner and were skipped above.
    f.for_each([&](Wavevector k, double v) {
        if (v == 0.0 || in_positive_half(k)) return;
        if (f.coeff(-k) != 0.0) return; // already written by the cosine pass
        cm.c[cm.index(-k)] = {0.0, v * kInvSqrt2};
        cm.c[cm.index(k)] = {0.0, -v * kInvSqrt2};
    });
    return cm;
}

SpectralScalarField from_complex(const ComplexModes& cm, int out_trunc) {
    SpectralScalarField f(out_trunc);
    f.for_each([&](Wavevector k, double) {
        if (!in_positive_half(k) || !cm.in_square(k)) return;
        const auto v = cm.at(k);
        if (v.real() != 0.0) f.set_coeff(k, kSqrt2 * v.real());
        if (v.imag() != 0.0) f.set_coeff(-k, kSqrt2 * v.imag());
    });
    return f;
}

// Exact product coefficients of a * b on |m| <= out_trunc (Euclidean).
ComplexModes convolve(const ComplexModes& a, const ComplexModes& b, int out_trunc) {
    ComplexModes out(out_trunc);
    const auto out_trunc_sq = static_cast<std::int64_t>(out_trunc) * out_trunc;
    for (int a1 = -a.n; a1 <= a.n; ++a1) {
        for (int a2 = -a.n; a2 <= a.n; ++a2) {
            const Wavevector ka{a1, a2};
            const auto ca = a.at(ka);
            if (ca == std::complex<double>{}) continue;
            for (int b1 = -b.n; b1 <= b.n; ++b1) {
                for (int b2 = -b.n; b2 <= b.n; ++b2) {
                    const Wavevector kb{b1, b2};
                    const auto cb = b.at(kb);
                    if (cb == std::complex<double>{}) continue;
                    const Wavevector m{a1 + b1, a2 + b2};
                    if (m.is_zero() || m.norm_sq() > out_trunc_sq || !out.in_square(m)) continue;
                    out.add(m, ca * cb);
                }
            }
        }
    }
    return out;
}

ComplexModes derivative_complex(const ComplexModes& f, int axis) {
    ComplexModes out(f.n);
    for (int k1 = -f.n; k1 <= f.n; ++k1)
        for (int k2 = -f.n; k2 <= f.n; ++k2) {
            const Wavevector k{k1, k2};
            const auto v = f.at(k);
            if (v == std::complex<double>{}) continue;
            const double m = axis == 0 ? k1 : k2;
            out.c[out.index(k)] = std::complex<double>(0.0, kTwoPi * m) * v;
        }
    return out;
}

// u = grad-perp(-Lambda^{-1} omega) in complex symbols: u_m = -i m-perp w_m / |m|.
std::array<ComplexModes, 2> velocity_complex(const ComplexModes& w) {
    std::array<ComplexModes, 2> u{ComplexModes(w.n), ComplexModes(w.n)};
    for (int k1 = -w.n; k1 <= w.n; ++k1)
        for (int k2 = -w.n; k2 <= w.n; ++k2) {
            const Wavevector m{k1, k2};
            if (m.is_zero()) continue;
            const auto v = w.at(m);
            if (v == std::complex<double>{}) continue;
            const std::complex<double> f = std::complex<double>(0.0, -1.0) * v / m.norm();
            u[0].c[u[0].index(m)] = static_cast<double>(m.perp().k1) * f;
            u[1].c[u[1].index(m)] = static_cast<double>(m.perp().k2) * f;
        }
    return u;
}

ComplexModes lambda_complex(const ComplexModes& f) {
    ComplexModes out(f.n);
    for (int k1 = -f.n; k1 <= f.n; ++k1)
        for (int k2 = -f.n; k2 <= f.n; ++k2) {
            const Wavevector k{k1, k2};
            if (k.is_zero()) continue;
            out.c[out.index(k)] = kTwoPi * k.norm() * f.at(k);
        }
    return out;
}

} // namespace

SpectralScalarField advect(const SpectralScalarField& omega, const SpectralScalarField& scalar) {
    require_same_truncation(omega, scalar);
    const int n = omega.truncation();
    const SpectralVectorField u = velocity_from_scalar(omega);
    return transport_by(u, scalar, n);
}

SpectralScalarField transport_by(const SpectralVectorField& w, const SpectralScalarField& f,
                                 int out_truncation) {
    const int side =
        std::max(alias_free_side(w.truncation(), f.truncation(), out_truncation),
                 product_grid_side(3 * out_truncation + 2));
    SpectralTransform& tr = transform_for(side);
    const auto w1 = tr.to_grid(w.x1);
    const auto w2 = tr.to_grid(w.x2);
    const auto g1 = tr.to_grid(partial_derivative(f, 0));
    const auto g2 = tr.to_grid(partial_derivative(f, 1));
    std::vector<double> prod(w1.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = w1[i] * g1[i] + w2[i] * g2[i];
    return tr.from_grid(prod, out_truncation);
}

SpectralScalarField advect_direct(const SpectralScalarField& omega,
                                  const SpectralScalarField& scalar) {
    require_same_truncation(omega, scalar);
    const int n = omega.truncation();
    const ComplexModes w = to_complex(omega);
    const auto u = velocity_complex(w);
    const ComplexModes fc = to_complex(scalar);
    ComplexModes sum(n);
    for (int axis = 0; axis < 2; ++axis) {
        const ComplexModes term = convolve(u[axis], derivative_complex(fc, axis), n);
        for (std::size_t i = 0; i < sum.c.size(); ++i) sum.c[i] += term.c[i];
    }
    return from_complex(sum, n);
}

SpectralScalarField transport_mode(const Wavevector& k, const SpectralScalarField& f) {
    if (k.is_zero()) throw std::invalid_argument("transport mode requires k != 0");
    const int n = f.truncation();
    SpectralScalarField zero(n);
    if (k.norm_sq() > static_cast<std::int64_t>(4) * n * n) return zero;

    const int wt = static_cast<int>(std::ceil(k.norm()));
    SpectralVectorField sigma(wt);
    const double inv_norm = 1.0 / k.norm();
    sigma.x1.set_coeff(k, k.perp().k1 * inv_norm);
    sigma.x2.set_coeff(k, k.perp().k2 * inv_norm);
    return transport_by(sigma, f, n);
}

SpectralVectorField commutator_apply(const SpectralScalarField& phi,
                                     const SpectralScalarField& psi) {
    require_same_truncation(phi, psi);
    const int n = phi.truncation();
    const int out = 2 * n;
    const ComplexModes psic = to_complex(psi);
    const ComplexModes lpsi = lambda_complex(psic);
    SpectralVectorField result(out);
    for (int axis = 0; axis < 2; ++axis) {
        const ComplexModes dphi = derivative_complex(to_complex(phi), axis);
        ComplexModes term = convolve(psic, dphi, out);
        term = lambda_complex(term);
        const ComplexModes second = convolve(lpsi, dphi, out);
        for (std::size_t i = 0; i < term.c.size(); ++i) term.c[i] -= second.c[i];
        (axis == 0 ? result.x1 : result.x2) = from_complex(term, out);
    }
    return result;
}

WeakPairing weak_nonlinear_pairing(const SpectralScalarField& omega,
                                   const SpectralScalarField& phi) {
    require_same_truncation(omega, phi);
    const int n = omega.truncation();
    WeakPairing out{0.0, 0.0};

    // Direct route: grid quadrature of omega (u . grad phi); the integrand has
    // bandwidth 3N, so the grid mean is the exact integral.
    {
        const int side = product_grid_side(3 * n + 1);
        SpectralTransform& tr = transform_for(side);
        const SpectralVectorField u = velocity_from_scalar(omega);
        const auto gw = tr.to_grid(omega);
        const auto gu1 = tr.to_grid(u.x1);
        const auto gu2 = tr.to_grid(u.x2);
        const auto gp1 = tr.to_grid(partial_derivative(phi, 0));
        const auto gp2 = tr.to_grid(partial_derivative(phi, 1));
        double acc = 0.0;
        for (std::size_t i = 0; i < gw.size(); ++i) acc += gw[i] * (gu1[i] * gp1[i] + gu2[i] * gp2[i]);
        out.direct = acc / static_cast<double>(gw.size());
    }

    // Commutator route: psi = -Lambda^{-1} omega, value = 1/2 <u, [Lambda, grad phi] psi>.
    {
        const SpectralScalarField psi = -1.0 * lambda_power(omega, -1.0);
        const SpectralVectorField c = commutator_apply(phi, psi);
        const SpectralVectorField u = velocity_from_scalar(omega);
        double acc = 0.0;
        u.x1.for_each([&](Wavevector k, double v) {
            if (v != 0.0) acc += v * c.x1.coeff(k);
        });
        u.x2.for_each([&](Wavevector k, double v) {
            if (v != 0.0) acc += v * c.x2.coeff(k);
        });
        out.commutator_form = 0.5 * acc;
    }
    return out;
}

} // namespace sqg
