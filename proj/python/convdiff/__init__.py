"""Finite-element lab for the 1D convection-diffusion model problem."""

from _convdiff import (
    converge,
    error,
    exact_u,
    figure,
    layer_ratio,
    max_residual,
    reduced_theta,
    reduced_w,
    solve,
)

__all__ = [
    "converge",
    "error",
    "exact_u",
    "figure",
    "layer_ratio",
    "max_residual",
    "reduced_theta",
    "reduced_w",
    "solve",
]
