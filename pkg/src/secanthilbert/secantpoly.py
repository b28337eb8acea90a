"""Hilbert polynomials of the first and second secant varieties.

``Sigma_1`` (secant lines) has dimension ``2n+1`` and ``Sigma_2`` (secant
planes) has dimension ``3n+2``.  Their Hilbert polynomials are recovered by
Lagrange interpolation from exact values at ``l = 2m+1`` and ``l = 3m+2``,
which are finite sums of the Euler characteristics ``l``, ``s1``, ``s2``.

``sigma2_node`` is the fully expanded sum; ``sigma2_node_alt`` assembles the
same value from the intermediate Euler characteristics on the Hilbert scheme
of two points and the nested Hilbert scheme.  They must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from . import eulerdata as ed
from .eulerdata import Curve, KClass, Positivity, VarietySpec
from .exactring import ConsistencyError, InputError, format_rational

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class HilbertPolynomial:
    coefficients: tuple[Fraction, ...]
    expected_dim: int

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        """Actual degree (index of the last nonzero coefficient); -1 for zero."""
        for i in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[i]:
                return i
        return -1

    @property
    def leading_coefficient(self) -> Fraction:
        d = self.degree
        return self.coefficients[d] if d >= 0 else Fraction(0)

    @property
    def leading_degree(self) -> Fraction:
        """``leading coefficient * dim!``, the degree of the underlying variety."""
        d = self.degree
        return self.leading_coefficient * factorial(max(d, 0))

    def coefficient_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]

    def to_text(self, var: str = "ℓ") -> str:
        parts: list[str] = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if a.denominator == 1:
                mag = "" if (a == 1 and k > 0) else str(a.numerator)
            else:
                mag = f"({a.numerator}/{a.denominator})"
            mono = "" if k == 0 else var + (str(k).translate(_SUPERSCRIPT) if k > 1 else "")
            term = mag + mono
            if not parts:
                parts.append(term if sign == "+" else "-" + term)
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts) if parts else "0"


def _poly_mul_linear(poly: list[Fraction], root: Fraction) -> list[Fraction]:
    """Multiply an ascending coefficient list by ``(x - root)``."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= root * c
    return out


def lagrange_interpolate(nodes: Sequence[tuple[int, Fraction]], expected_dim: int | None = None) -> HilbertPolynomial:
    """Unique polynomial of degree ``< len(nodes)`` through ``nodes``."""
    xs = [Fraction(x) for x, _ in nodes]
    if len(set(xs)) != len(xs):
        raise InputError("interpolation nodes must have distinct abscissae")
    if not nodes:
        raise InputError("at least one node is required")
    size = len(nodes)
    coeffs = [Fraction(0)] * size
    for m, (xm, (_, ym)) in enumerate(zip(xs, nodes)):
        ym = Fraction(ym)
        if not ym:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for t, xt in enumerate(xs):
            if t == m:
                continue
            basis = _poly_mul_linear(basis, xt)
            denom *= xm - xt
        scale = ym / denom
        for i, b in enumerate(basis):
            coeffs[i] += scale * b
    dim = size - 1 if expected_dim is None else expected_dim
    return HilbertPolynomial(tuple(coeffs), dim)


def _nn(*args: int) -> None:
    # Summation bounds in the node formulas never produce negative indices.
    for a in args:
        if a < 0:
            raise ConsistencyError(f"negative index {a} reached inside a node formula")


# --- Sigma_1 ------------------------------------------------------------------

def sigma1_node(V: VarietySpec, m: int) -> Fraction:
    """``P_{Sigma_1}(2m+1)``."""
    if m < 0:
        raise InputError("m must be nonnegative")
    ell = 2 * m + 1
    total = ed.l(V, ell)
    for i in range(1, m + 1):
        _nn(ell - i, i)
        term = ed.l(V, ell - i) * ed.l(V, i)
        for j in range(2 * i):
            term -= ed.s1(V, j, ell)
        total += term
    return total


@lru_cache(maxsize=None)
def sigma1_nodes(V: VarietySpec) -> tuple[tuple[int, Fraction], ...]:
    n = V.dimension
    return tuple((2 * m + 1, sigma1_node(V, m)) for m in range(2 * n + 2))


@lru_cache(maxsize=None)
def sigma1_polynomial(V: VarietySpec) -> HilbertPolynomial:
    return lagrange_interpolate(sigma1_nodes(V), 2 * V.dimension + 1)


# --- auxiliary Euler characteristics ------------------------------------------

def _chi_twisted(V: VarietySpec, K: KClass | None, a: int) -> Fraction:
    if K is None:
        return ed.l(V, a)
    if isinstance(V, Curve):
        raise InputError("nontrivial bundles are only modelled on ProductProj")
    return ed.chi_kclass(V, K, a)


def chi_blowup_product(V: VarietySpec, F: KClass | None, G: KClass | None, a: int, b: int, c: int) -> Fraction:
    """``chi`` of ``tau^*(L^a F) (x) res^*(L^b G)`` twisted by ``-c`` times the exceptional divisor.

    ``F``/``G`` of ``None`` mean the trivial bundle.
    """
    if min(a, b, c) < 0:
        raise InputError("a, b, c must be nonnegative")
    out = _chi_twisted(V, F, a) * _chi_twisted(V, G, b)
    if F is None and G is None:
        for i in range(c):
            out -= ed.s1(V, i, a + b)
        return out
    if isinstance(V, Curve):
        raise InputError("nontrivial bundles are only modelled on ProductProj")
    FG = (F or KClass.trivial(V.ring)) * (G or KClass.trivial(V.ring))
    for i in range(c):
        out -= ed.chi_kclass(V, ed.sym_omega_kclass(V, i) * FG, a + b)
    return out


@lru_cache(maxsize=None)
def chi_sym_e2_twist(V: VarietySpec, a: int, b: int) -> Fraction:
    """``chi(S^a E_2 (x) A_2^b)`` on the Hilbert scheme of two points."""
    if a < 0 or b < 0:
        raise InputError("a, b must be nonnegative")
    P1 = sigma1_polynomial(V)
    top = a + 2 * b
    out = P1(top) + ed.gamma(V) * ed.l(V, top)
    for i in range(1, b + 1):
        _nn(b - i)
        term = ed.l(V, b - i) * ed.l(V, a + b + i)
        for j in range(2 * (b - i)):
            term -= ed.s1(V, j, top)
        out -= term
    return out


@lru_cache(maxsize=None)
def chi_sym_n_twist(V: VarietySpec, a: int, b: int, c: int, d: int) -> Fraction:
    """``chi(S^a N^vee (x) (tau^* L^b (x) res^* L^c)(-d F_1))`` on the nested Hilbert scheme."""
    if min(a, b, c, d) < 0:
        raise InputError("a, b, c, d must be nonnegative")
    out = ed.s1(V, a, c) * ed.l(V, b)
    for i in range(1, d + 1):
        out -= ed.s2(V, a, d - i, b + c)
    for j in range(1, a + 1):
        out -= ed.s2(V, a - j, d + 2 * j - 1, b + c)
    return out


# --- Sigma_2 ------------------------------------------------------------------

def sigma2_node(V: VarietySpec, m: int) -> Fraction:
    """``P_{Sigma_2}(3m+2)`` from the fully expanded sum."""
    if m < 0:
        raise InputError("m must be nonnegative")
    l, s1, s2 = (lambda a: ed.l(V, a)), (lambda a, b: ed.s1(V, a, b)), (lambda a, b, c: ed.s2(V, a, b, c))
    P1 = sigma1_polynomial(V)
    G = ed.gamma(V)
    top = 3 * m + 2
    total = P1(top)

    for i in range(1, m + 1):
        x = top - i
        inner = P1(x) + G * l(x)
        for p in range(1, i + 2):
            _nn(i + 1 - p)
            t = l(i + 1 - p) * l(3 * m - 2 * i + 1 + p)
            for q in range(2 * i - 2 * p + 2):
                t -= s1(q, x)
            inner -= t
        total += inner * l(i)

    for i in range(1, m + 1):
        inner = P1(2 * i) + G * l(2 * i)
        for p in range(1, i + 1):
            t = l(i - p) * l(i + p)
            for q in range(2 * i - 2 * p):
                t -= s1(q, 2 * i)
            inner -= t
        _nn(3 * m - 2 * i + 2)
        total += inner * l(3 * m - 2 * i + 2)

    for i in range(1, m + 1):
        for j in range(2 * i):
            for p in range(1, 2 * i + 1):
                total += s2(j, 2 * i - p, top)
            for p in range(1, j + 1):
                total += s2(j - p, 2 * i + 2 * p - 1, top)

    for i in range(1, m + 1):
        for j in range(2 * i):
            for k in range(3 * m - 3 * i + 1):
                for p in range(1, k + 2 * i + 3):
                    total += s2(j, k + 2 * i - p + 2, top)
                for p in range(1, j + 1):
                    total += s2(j - p, k + 2 * i + 2 * p + 1, top)

    for i in range(1, m + 1):
        for j in range(2 * i):
            total -= s1(j, top - i) * l(i)

    for i in range(1, m + 1):
        for j in range(2 * i):
            for k in range(3 * m - 3 * i + 1):
                _nn(3 * m - i - k + 1)
                total -= s1(j, 3 * m - i - k + 1) * l(k + i + 1)

    return total


def sigma2_node_alt(V: VarietySpec, m: int) -> Fraction:
    """``P_{Sigma_2}(3m+2)`` assembled from :func:`chi_sym_e2_twist` and :func:`chi_sym_n_twist`."""
    if m < 0:
        raise InputError("m must be nonnegative")
    top = 3 * m + 2
    total = sigma1_polynomial(V)(top)
    for i in range(1, m + 1):
        total += chi_sym_e2_twist(V, 3 * m - 3 * i, i + 1) * ed.l(V, i)
        total += chi_sym_e2_twist(V, 0, i) * ed.l(V, 3 * m - 2 * i + 2)
    for i in range(1, m + 1):
        for j in range(2 * i):
            total -= chi_sym_n_twist(V, j, i, 3 * m - i + 2, 2 * i)
    for i in range(1, m + 1):
        for j in range(2 * i):
            for k in range(3 * m - 3 * i + 1):
                total -= chi_sym_n_twist(V, j, k + i + 1, 3 * m - i - k + 1, k + 2 * i + 2)
    return total


@lru_cache(maxsize=None)
def sigma2_nodes(V: VarietySpec) -> tuple[tuple[int, Fraction], ...]:
    n = V.dimension
    return tuple((3 * m + 2, sigma2_node(V, m)) for m in range(3 * n + 3))


@lru_cache(maxsize=None)
def sigma2_polynomial(V: VarietySpec) -> HilbertPolynomial:
    sigma1_polynomial(V)
    return lagrange_interpolate(sigma2_nodes(V), 3 * V.dimension + 2)


def secant_polynomial(V: VarietySpec, secant_index: int) -> HilbertPolynomial:
    if secant_index == 1:
        return sigma1_polynomial(V)
    if secant_index == 2:
        return sigma2_polynomial(V)
    raise InputError(f"secant index must be 1 or 2, got {secant_index!r}")


def secant_nodes(V: VarietySpec, secant_index: int) -> tuple[tuple[int, Fraction], ...]:
    if secant_index == 1:
        return sigma1_nodes(V)
    if secant_index == 2:
        return sigma2_nodes(V)
    raise InputError(f"secant index must be 1 or 2, got {secant_index!r}")


# --- report -------------------------------------------------------------------

@dataclass(frozen=True)
class SecantReport:
    variety: VarietySpec
    secant_index: int
    polynomial: HilbertPolynomial
    dimension: int
    degree: Fraction
    node_values: tuple[tuple[int, Fraction], ...]
    positivity: Positivity
    ambient_dim: Fraction
    notes: tuple[str, ...] = field(default=())

    @property
    def fills_ambient(self) -> bool:
        return self.ambient_dim == self.dimension


def report(V: VarietySpec, secant_index: int) -> SecantReport:
    positivity = ed.validate_positivity(V, secant_index)
    poly = secant_polynomial(V, secant_index)
    dim = poly.degree
    degree = poly.leading_degree
    if positivity.ok:
        if dim != poly.expected_dim:
            raise ConsistencyError(f"{V.label()}: polynomial degree {dim} != expected dimension {poly.expected_dim}")
        if degree.denominator != 1 or degree <= 0:
            raise ConsistencyError(f"{V.label()}: secant degree {degree} is not a positive integer")
    ambient = ed.l(V, 1) - 1
    notes = ("fills ambient space",) if ambient == dim else ()
    return SecantReport(
        variety=V,
        secant_index=secant_index,
        polynomial=poly,
        dimension=dim,
        degree=degree,
        node_values=secant_nodes(V, secant_index),
        positivity=positivity,
        ambient_dim=ambient,
        notes=notes,
    )
