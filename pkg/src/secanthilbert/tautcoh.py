"""Cohomology dimensions of symmetric powers of tautological bundles.

For ``k = 2, 3`` and ``l >= 1`` the groups ``H^i(X^[k], S^l E_{k,L})`` are
expressed through the Hilbert polynomials of the secant varieties, ``h^i(O_X)``
and ``h^i(O_{X^[2]})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from . import eulerdata as ed
from .eulerdata import HodgeVector, Positivity, VarietySpec
from .exactring import ConsistencyError, InputError
from .secantpoly import chi_sym_e2_twist, sigma1_polynomial, sigma2_polynomial


def hodge_ox2(h: HodgeVector) -> tuple[int, ...]:
    """``h^i(O_{X^[2]})`` for ``i = 0..2n`` from the Hodge vector of ``X``.

    The off-diagonal Kunneth pieces ``H^p (x) H^q`` with ``p < q`` contribute
    once; the diagonal piece contributes ``S^2`` or ``wedge^2`` of
    ``H^{i/2}`` according to the parity of ``i/2``.
    """
    n = h.n
    out = []
    for i in range(2 * n + 1):
        total = sum(h[p] * h[i - p] for p in range(0, (i + 1) // 2) if i - p > p)
        if i % 2 == 0:
            d = h[i // 2]
            total += comb(d + 1, 2) if (i // 2) % 2 == 0 else comb(d, 2)
        out.append(total)
    return tuple(out)


def _check_ell(ell: int) -> None:
    if not isinstance(ell, int) or ell < 1:
        raise InputError(f"twist must be a positive integer, got {ell!r}")


def table_k2(V: VarietySpec, ell: int) -> tuple[Fraction, ...]:
    """``h^i(X^[2], S^l E_{2,L})`` for ``i = 0..n``; higher rows vanish."""
    _check_ell(ell)
    h = ed.hodge_vector(V)
    col = [sigma1_polynomial(V)(ell)]
    lv = ed.l(V, ell)
    col.extend(h[i] * lv for i in range(1, V.dimension + 1))
    return tuple(col)


def table_k3(V: VarietySpec, ell: int) -> tuple[Fraction, ...]:
    """``h^i(X^[3], S^l E_{3,L})`` for ``i = 0..2n``; higher rows vanish."""
    _check_ell(ell)
    n = V.dimension
    h = ed.hodge_vector(V)
    h2 = hodge_ox2(h)
    p1 = sigma1_polynomial(V)(ell)
    lv = ed.l(V, ell)
    col = [sigma2_polynomial(V)(ell)]
    for i in range(1, n + 1):
        # the quotient H^i(O_{X^[2]}) / H^i(O_X) is a direct-summand complement
        col.append(h[i] * p1 + (h2[i] - h[i]) * lv)
    for i in range(n + 1, 2 * n + 1):
        col.append(h2[i] * lv)
    return tuple(col)


def column(V: VarietySpec, k: int, ell: int) -> tuple[Fraction, ...]:
    if k == 2:
        return table_k2(V, ell)
    if k == 3:
        return table_k3(V, ell)
    raise InputError(f"k must be 2 or 3, got {k!r}")


@dataclass(frozen=True)
class CohomologyTable:
    k: int
    variety: VarietySpec
    ells: tuple[int, ...]
    rows: dict
    positivity: Positivity

    @property
    def max_degree(self) -> int:
        return (self.k - 1) * self.variety.dimension

    def entry(self, i: int, ell: int) -> Fraction:
        if i > self.max_degree:
            return Fraction(0)
        return self.rows[(i, ell)]

    def records(self) -> list[tuple[int, int, Fraction]]:
        """``(i, ell, dim)`` sorted by ``(ell, i)``."""
        return [(i, ell, self.rows[(i, ell)]) for ell in self.ells for i in range(self.max_degree + 1)]


def cohomology_table(V: VarietySpec, k: int, ells: Iterable[int]) -> CohomologyTable:
    ells = tuple(ells)
    for ell in ells:
        _check_ell(ell)
    rows = {}
    for ell in ells:
        for i, v in enumerate(column(V, k, ell)):
            if v.denominator != 1 or v < 0:
                raise ConsistencyError(f"{V.label()}: h^{i} at l={ell} is {v}, not a nonnegative integer")
            rows[(i, ell)] = v
    return CohomologyTable(k, V, ells, rows, ed.validate_positivity(V, k - 1))


def euler_check(V: VarietySpec, k: int, ell: int) -> Fraction:
    """Alternating sum of a table column; for ``k = 2`` it is cross-checked."""
    col = column(V, k, ell)
    chi = sum(((-1) ** i * v for i, v in enumerate(col)), Fraction(0))
    if k == 2:
        expected = chi_sym_e2_twist(V, ell, 0)
        if chi != expected:
            raise ConsistencyError(f"{V.label()}: table Euler characteristic {chi} != {expected} at l={ell}")
    return chi
