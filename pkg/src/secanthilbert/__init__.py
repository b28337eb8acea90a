"""Exact Hilbert polynomials of secant varieties and cohomology of tautological bundles."""

__version__ = "0.1.0"

from .eulerdata import Curve, ProductProj, hodge_vector, l, s1, s2  # noqa: E402
from .exactring import ConsistencyError, InputError, RingSpec  # noqa: E402
from .secantpoly import (  # noqa: E402
    HilbertPolynomial,
    lagrange_interpolate,
    report,
    sigma1_polynomial,
    sigma2_polynomial,
)
from .tautcoh import cohomology_table, hodge_ox2  # noqa: E402

__all__ = [
    "ConsistencyError",
    "Curve",
    "HilbertPolynomial",
    "InputError",
    "ProductProj",
    "RingSpec",
    "cohomology_table",
    "hodge_ox2",
    "hodge_vector",
    "l",
    "lagrange_interpolate",
    "report",
    "s1",
    "s2",
    "sigma1_polynomial",
    "sigma2_polynomial",
]
