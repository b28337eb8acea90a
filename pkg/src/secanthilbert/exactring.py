"""Exact arithmetic in the truncated cohomology ring of a product of projective spaces.

The ring of ``P^{n_1} x ... x P^{n_k}`` is ``Q[h_1, ..., h_k] / (h_i^{n_i + 1})``.
Elements are stored sparsely as ``{exponent vector: Fraction}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction


class InputError(ValueError):
    """Raised when an operation receives arguments outside its domain."""


class ConsistencyError(RuntimeError):
    """Raised when two computations that must agree do not."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"expected an exact integer or rational, got {value!r}")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Serialize as ``"num/den"``; the denominator is always written."""
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        return Fraction(int(num))
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class RingSpec:
    """Factor dimensions ``(n_1, ..., n_k)`` of a product of projective spaces."""

    factor_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(self.factor_dims)
        if not dims or any(not isinstance(n, int) or n < 1 for n in dims):
            raise InputError(f"factor dimensions must be positive integers, got {self.factor_dims!r}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def total_dim(self) -> int:
        return sum(self.factor_dims)

    @property
    def arity(self) -> int:
        return len(self.factor_dims)

    @property
    def top(self) -> tuple[int, ...]:
        return self.factor_dims


class GradedClass:
    """An element of the truncated ring; immutable after construction."""

    __slots__ = ("_spec", "_terms")

    def __init__(self, spec: RingSpec, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != spec.arity:
                raise InputError(f"exponent {exp} has wrong arity for {spec}")
            if any(e < 0 for e in exp):
                raise InputError(f"negative exponent {exp}")
            if any(e > n for e, n in zip(exp, spec.factor_dims)):
                continue
            c = as_rational(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._spec = spec
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}

    @classmethod
    def zero(cls, spec: RingSpec) -> GradedClass:
        return cls(spec)

    @classmethod
    def constant(cls, spec: RingSpec, value=1) -> GradedClass:
        return cls(spec, {(0,) * spec.arity: value})

    @classmethod
    def generator(cls, spec: RingSpec, index: int, coeff=1) -> GradedClass:
        """``coeff * h_index`` (0-based factor index)."""
        exp = [0] * spec.arity
        exp[index] = 1
        return cls(spec, {tuple(exp): coeff})

    @classmethod
    def linear(cls, spec: RingSpec, coeffs: Sequence) -> GradedClass:
        """``sum_i coeffs[i] * h_i``."""
        if len(coeffs) != spec.arity:
            raise InputError("linear form has wrong arity")
        out = {}
        for i, c in enumerate(coeffs):
            exp = [0] * spec.arity
            exp[i] = 1
            out[tuple(exp)] = c
        return cls(spec, out)

    @property
    def spec(self) -> RingSpec:
        return self._spec

    def terms(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Terms in lexicographic exponent order."""
        return iter(self._terms.items())

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._spec.arity)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: GradedClass) -> None:
        if not isinstance(other, GradedClass):
            raise InputError(f"cannot combine GradedClass with {type(other).__name__}")
        if other._spec != self._spec:
            raise InputError(f"ring mismatch: {self._spec} vs {other._spec}")

    def __add__(self, other: GradedClass) -> GradedClass:
        return add(self, other)

    def __sub__(self, other: GradedClass) -> GradedClass:
        return add(self, -other)

    def __neg__(self) -> GradedClass:
        return self.scale(-1)

    def __mul__(self, other) -> GradedClass:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GradedClass:
        if k < 0:
            raise InputError("negative power")
        out = GradedClass.constant(self._spec)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> GradedClass:
        c = as_rational(c)
        return GradedClass(self._spec, {e: v * c for e, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedClass) and self._spec == other._spec and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._spec, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms.items():
            mono = "*".join(f"h{i + 1}^{e}" if e > 1 else f"h{i + 1}" for i, e in enumerate(exp) if e)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def add(a: GradedClass, b: GradedClass) -> GradedClass:
    a._check(b)
    out = dict(a._terms)
    for e, c in b._terms.items():
        out[e] = out.get(e, Fraction(0)) + c
    return GradedClass(a.spec, out)


def mul(a: GradedClass, b: GradedClass) -> GradedClass:
    a._check(b)
    top = a.spec.factor_dims
    out: dict[tuple[int, ...], Fraction] = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > n for x, n in zip(e, top)):
                continue
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return GradedClass(a.spec, out)


def integrate(a: GradedClass) -> Fraction:
    """Degree map: the coefficient of ``h_1^{n_1} ... h_k^{n_k}``."""
    return a.coefficient(a.spec.top)


def exp_series(a: GradedClass) -> GradedClass:
    if a.constant_term():
        raise InputError("exp_series needs a nilpotent argument (zero constant term)")
    out = GradedClass.constant(a.spec)
    power = GradedClass.constant(a.spec)
    for j in range(1, a.spec.total_dim + 1):
        power = power * a
        if power.is_zero():
            break
        out = out + power.scale(Fraction(1, factorial(j)))
    return out


# Univariate truncated power series, as coefficient lists.

def series_mul(f: Sequence[Fraction], g: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, fi in enumerate(f[: order + 1]):
        if not fi:
            continue
        for j, gj in enumerate(g[: order + 1 - i]):
            out[i + j] += fi * gj
    return out


def series_inverse(f: Sequence[Fraction], order: int) -> list[Fraction]:
    """Inverse of a power series with nonzero constant term, to degree ``order``."""
    if not f or not f[0]:
        raise InputError("series with zero constant term is not invertible")
    f = list(f) + [Fraction(0)] * max(0, order + 1 - len(f))
    inv = [Fraction(1) / f[0]]
    for k in range(1, order + 1):
        acc = sum((f[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0))
        inv.append(-acc / f[0])
    return inv


def todd_series(order: int) -> list[Fraction]:
    """Coefficients of ``x / (1 - e^{-x})`` up to ``x^order``."""
    # (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    base = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 1)]
    return series_inverse(base, order)


def univariate_class(spec: RingSpec, index: int, coeffs: Iterable[Fraction]) -> GradedClass:
    out = {}
    for k, c in enumerate(coeffs):
        exp = [0] * spec.arity
        exp[index] = k
        out[tuple(exp)] = c
    return GradedClass(spec, out)


@lru_cache(maxsize=None)
def todd_class(spec: RingSpec) -> GradedClass:
    """``prod_i (h_i / (1 - e^{-h_i}))^{n_i + 1}``, the Todd class of the product."""
    out = GradedClass.constant(spec)
    for i, n in enumerate(spec.factor_dims):
        factor = univariate_class(spec, i, todd_series(n))
        out = out * factor ** (n + 1)
    return out
