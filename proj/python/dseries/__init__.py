"""Truncated Dirichlet series, Bohr lifts and permutation-invariant subalgebras.

Exact coefficients are ``int``, ``str`` ("3/4") or ``fractions.Fraction``, with
``(re, im)`` pairs for complex values; float-mode coefficients are ``complex``.
"""

from ._dseries import (
    DseriesError,
    Series,
    act,
    cauchy,
    convexity_check,
    dilate,
    drop,
    group_average,
    hat,
    invert,
    is_invariant,
    l1_norm,
    l1_norm_exact,
    lift,
    line_sup,
    partial_sum,
    perron,
    project,
    random_series,
    replay,
    restrict,
    seminorm,
    seminorm_profile,
    sigma_u_plus,
    suites,
    torus_sup,
    verify,
)

__all__ = [
    "DseriesError",
    "Series",
    "act",
    "cauchy",
    "convexity_check",
    "dilate",
    "drop",
    "group_average",
    "hat",
    "invert",
    "is_invariant",
    "l1_norm",
    "l1_norm_exact",
    "lift",
    "line_sup",
    "partial_sum",
    "perron",
    "project",
    "random_series",
    "replay",
    "restrict",
    "seminorm",
    "seminorm_profile",
    "sigma_u_plus",
    "suites",
    "torus_sup",
    "verify",
]
