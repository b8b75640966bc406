#pragma once

#include "sqg/field.hpp"

namespace sqg {

// Exact Galerkin nonlinearity Pi_N((K_0 * Pi_N omega) . grad(Pi_N scalar)).
// With scalar = omega this is b_N(omega); with scalar = xi it is h_N(xi).
// Fast-transform production path; the quadratic product is evaluated on an
// alias-free grid, so <advect(omega, f), f> = 0 holds to rounding.
SpectralScalarField advect(const SpectralScalarField& omega, const SpectralScalarField& scalar);

// Reference oracle: brute-force mode-pair convolution in coefficient space.
SpectralScalarField advect_direct(const SpectralScalarField& omega,
                                  const SpectralScalarField& scalar);

// G_N^k(f) = Pi_N(sigma_k . grad(Pi_N f)). Zero field whenever |k| > 2N.
SpectralScalarField transport_mode(const Wavevector& k, const SpectralScalarField& f);

// Pi_{out}(w . grad f) for an arbitrary divergence-free advecting field w.
// Shared by transport_mode and by the noise sum in the SDE stepper.
SpectralScalarField transport_by(const SpectralVectorField& w, const SpectralScalarField& f,
                                 int out_truncation);

// [Lambda, grad phi] psi = Lambda(psi grad phi) - (Lambda psi) grad phi,
// computed exactly at the full product bandwidth 2N. The constant component of
// (Lambda psi) grad phi is dropped (fields are zero-mean by type); it never
// enters the weak pairing because the velocity has zero mean.
SpectralVectorField commutator_apply(const SpectralScalarField& phi,
                                     const SpectralScalarField& psi);

// Weak form of the nonlinearity evaluated two independent ways:
//   direct          = <omega, u . grad phi>        (grid quadrature)
//   commutator_form = (1/2) <u, [Lambda, grad phi] psi>, psi = -Lambda^{-1} omega
struct WeakPairing {
    double direct;
    double commutator_form;
};
WeakPairing weak_nonlinear_pairing(const SpectralScalarField& omega,
                                   const SpectralScalarField& phi);

} // namespace sqg
