"""Frame analysis for continuous-time dynamical sampling systems."""

from ._dynsamp import (  # noqa: F401
    NumericalError,
    ValidationError,
    analyze,
    carleson_constant,
    cayley_transform,
    frame_bounds,
    full_theorem_check,
    gram_disc,
    gram_halfplane,
    kernel_disc,
    kernel_halfplane,
    mobius,
    pseudo_hyperbolic,
    quadform_continuous,
    quadform_discrete,
    reconstruct,
    sampled_quadform_finite,
    sampled_quadform_uniform,
)

__all__ = [
    "NumericalError",
    "ValidationError",
    "analyze",
    "carleson_constant",
    "cayley_transform",
    "frame_bounds",
    "full_theorem_check",
    "gram_disc",
    "gram_halfplane",
    "kernel_disc",
    "kernel_halfplane",
    "mobius",
    "pseudo_hyperbolic",
    "quadform_continuous",
    "quadform_discrete",
    "reconstruct",
    "sampled_quadform_finite",
    "sampled_quadform_uniform",
]
