"""Pseudo-spectral solvers for stochastic SQG and 2D critical Boussinesq
equations with transport noise."""

from ._sqglab import (  # noqa: F401
    NoiseCoefficients,
    SpectralScalarField,
    __version__,
    advect,
    advect_direct,
    basis_eval,
    galerkin_project,
    grad_l2_norm,
    lambda_power,
    random_field,
    scaling_ratio,
    sigma_eval,
    simulate_sqg,
    sobolev_norm,
    solve_boussinesq,
    solve_sqg,
    tensor_identity_sum,
    transport_mode,
    validate_symmetry,
    velocity_from_scalar,
    weak_nonlinear_pairing,
)
