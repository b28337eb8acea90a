"""Variety models and the Euler characteristics the secant formulas consume.

Two models are supported:

* :class:`Curve` -- an abstract smooth curve of genus ``g`` embedded by a line
  bundle of degree ``d``.  Everything is closed form via Riemann-Roch, since
  ``S^a Omega = omega^a`` on a curve.
* :class:`ProductProj` -- ``P^{n_1} x ... x P^{n_k}`` with ``L = O(d_1, ..., d_k)``.

For products, ``S^j Omega`` is expanded in K-theory into line-bundle classes
(Euler sequence on each factor) and Euler characteristics are summed from the
Kunneth formula.  :func:`chi_hrr` recomputes the same numbers by integrating
``ch * td`` in the truncated cohomology ring; the two paths share no code
beyond the :class:`KClass` being evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb, factorial
from typing import Iterator, Mapping, Sequence, Union

from .exactring import (
    GradedClass,
    InputError,
    RingSpec,
    exp_series,
    integrate,
    todd_class,
)


@dataclass(frozen=True)
class Curve:
    genus: int
    degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InputError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise InputError(f"degree must be a positive integer, got {self.degree!r}")

    @property
    def dimension(self) -> int:
        return 1

    def to_dict(self) -> dict:
        return {"space": "curve", "genus": self.genus, "degree": self.degree}

    def label(self) -> str:
        return f"Curve(g={self.genus}, d={self.degree})"


@dataclass(frozen=True)
class ProductProj:
    ring: RingSpec
    line_bundle: tuple[int, ...]

    def __post_init__(self) -> None:
        lb = tuple(self.line_bundle)
        if len(lb) != self.ring.arity:
            raise InputError(f"line bundle {lb} does not match factors {self.ring.factor_dims}")
        if any(not isinstance(d, int) or d < 1 for d in lb):
            raise InputError(f"line bundle degrees must be positive integers, got {lb}")
        object.__setattr__(self, "line_bundle", lb)

    @classmethod
    def of(cls, dims: Sequence[int], degrees: Sequence[int]) -> ProductProj:
        return cls(RingSpec(tuple(dims)), tuple(degrees))

    @property
    def dimension(self) -> int:
        return self.ring.total_dim

    def to_dict(self) -> dict:
        return {"space": "pps", "dims": list(self.ring.factor_dims), "degrees": list(self.line_bundle)}

    def label(self) -> str:
        space = " x ".join(f"P^{n}" for n in self.ring.factor_dims)
        return f"{space} with O{self.line_bundle if len(self.line_bundle) > 1 else '(%d)' % self.line_bundle[0]}"


VarietySpec = Union[Curve, ProductProj]


def variety_from_dict(data: Mapping) -> VarietySpec:
    space = data.get("space")
    try:
        if space == "curve":
            return Curve(int(data["genus"]), int(data["degree"]))
        if space == "pps":
            return ProductProj.of([int(x) for x in data["dims"]], [int(x) for x in data["degrees"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed variety {dict(data)!r}: {exc}") from exc
    raise InputError(f"unknown space {space!r}; expected 'curve' or 'pps'")


def _exact(c) -> int | Fraction:
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise InputError(f"expected an exact coefficient, got {c!r}")
    return c


def _narrow(c: int | Fraction) -> int | Fraction:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class KClass:
    """A virtual bundle ``sum_e c_e [O(e)]`` on a product of projective spaces.

    Multiplication is the tensor product, i.e. multidegrees add.
    """

    __slots__ = ("_spec", "_terms")

    def __init__(self, spec: RingSpec, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[tuple[int, ...], int | Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != spec.arity:
                raise InputError(f"multidegree {e} has wrong arity for {spec}")
            clean[e] = clean.get(e, 0) + _exact(c)
        self._spec = spec
        # Integral coefficients stay plain ints; Fraction arithmetic is ~50x slower.
        self._terms = {e: _narrow(clean[e]) for e in sorted(clean) if clean[e]}

    @classmethod
    def line(cls, spec: RingSpec, e: Sequence[int], coeff=1) -> KClass:
        return cls(spec, {tuple(e): coeff})

    @classmethod
    def trivial(cls, spec: RingSpec) -> KClass:
        return cls.line(spec, (0,) * spec.arity)

    @property
    def spec(self) -> RingSpec:
        return self._spec

    def terms(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return Fraction(self._terms.get(tuple(e), 0))

    @property
    def rank(self) -> Fraction:
        return Fraction(sum(self._terms.values()))

    def first_chern(self) -> tuple[Fraction, ...]:
        """``c_1`` as a multidegree (the determinant line bundle's degrees)."""
        out = [Fraction(0)] * self._spec.arity
        for e, c in self._terms.items():
            for i, x in enumerate(e):
                out[i] += c * x
        return tuple(out)

    def twist(self, e: Sequence[int]) -> KClass:
        return KClass(self._spec, {tuple(x + y for x, y in zip(k, e)): c for k, c in self._terms.items()})

    def _check(self, other: KClass) -> None:
        if not isinstance(other, KClass) or other._spec != self._spec:
            raise InputError("KClass ring mismatch")

    def __add__(self, other: KClass) -> KClass:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return KClass(self._spec, out)

    def __neg__(self) -> KClass:
        return KClass(self._spec, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: KClass) -> KClass:
        return self + (-other)

    def __mul__(self, other) -> KClass:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return KClass(self._spec, {e: c * _exact(other) for e, c in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int | Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return KClass(self._spec, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, KClass) and self._spec == other._spec and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._spec, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}[O{e}]" for e, c in self._terms.items())


@dataclass(frozen=True)
class HodgeVector:
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.dims or self.dims[0] != 1:
            raise InputError("h^0(O_X) must be 1")
        if any(h < 0 for h in self.dims):
            raise InputError("Hodge numbers must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0


@dataclass(frozen=True)
class Positivity:
    ok: bool
    message: str = ""
    triggered: tuple[str, ...] = ()

    def to_json(self):
        return "ok" if self.ok else {"status": "warning", "message": self.message}


# --- K-theoretic path ---------------------------------------------------------

def binomial_poly(x: int, n: int) -> Fraction:
    """``x (x-1) ... (x-n+1) / n!`` -- the binomial ``C(x, n)`` as a polynomial in ``x``."""
    num = 1
    for i in range(n):
        num *= x - i
    return Fraction(num, factorial(n))


def chi_line(V: VarietySpec, e) -> Fraction:
    """Euler characteristic of a single line bundle.

    For a curve, ``e`` is a plain degree ``D`` and the result is ``D + 1 - g``.
    For a product, ``e`` is a multidegree (or an integer when there is one factor).
    """
    if isinstance(V, Curve):
        if not isinstance(e, int):
            raise InputError("a curve line bundle is given by one integer degree")
        return Fraction(e + 1 - V.genus)
    return Fraction(_chi_line_int(V.ring.factor_dims, _multidegree(V.ring, e)))


def _chi_line_int(dims: tuple[int, ...], e: tuple[int, ...]) -> int:
    out = 1
    for x, n in zip(e, dims):
        out *= _binomial_int(x + n, n)
    return out


@lru_cache(maxsize=None)
def _binomial_int(x: int, n: int) -> int:
    # n consecutive integers always have a product divisible by n!.
    num = 1
    for i in range(n):
        num *= x - i
    return num // factorial(n)


def _multidegree(spec: RingSpec, e) -> tuple[int, ...]:
    if isinstance(e, int):
        e = (e,)
    e = tuple(e)
    if len(e) != spec.arity:
        raise InputError(f"multidegree {e} has arity {len(e)}, expected {spec.arity}")
    return e


def chi_kclass(V: ProductProj, K: KClass, twist: int = 0) -> Fraction:
    """``chi(K (x) L^twist)`` summed term by term from :func:`chi_line`."""
    if K.spec != V.ring:
        raise InputError("KClass does not live on this variety")
    dims = V.ring.factor_dims
    shift = tuple(twist * d for d in V.line_bundle)
    total = 0
    for e, c in K.terms():
        total += c * _chi_line_int(dims, tuple(x + s for x, s in zip(e, shift)))
    return Fraction(total)


@lru_cache(maxsize=None)
def _sym_omega_factor(n: int, j: int) -> tuple[tuple[int, int], ...]:
    """``[S^j Omega_{P^n}]`` as ``((degree, coeff), ...)``.

    From ``sigma_t(Omega) = (1 - t) / (1 - [O(-1)] t)^{n+1}``.
    """
    if j == 0:
        return ((0, 1),)
    return ((-j, comb(j + n, n)), (-j + 1, -comb(j + n - 1, n)))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def sym_omega_kclass(V: ProductProj, j: int) -> KClass:
    if not isinstance(V, ProductProj):
        raise InputError("sym_omega_kclass needs a ProductProj model")
    if j < 0:
        raise InputError("symmetric power index must be nonnegative")
    dims = V.ring.factor_dims
    out: dict[tuple[int, ...], Fraction] = {}
    for split in _compositions(j, len(dims)):
        pieces = [_sym_omega_factor(n, ji) for n, ji in zip(dims, split)]
        for combo in cartesian(*pieces):
            e = tuple(deg for deg, _ in combo)
            c = 1
            for _, coeff in combo:
                c *= coeff
            out[e] = out.get(e, Fraction(0)) + c
    return KClass(V.ring, out)


@lru_cache(maxsize=None)
def _sym_omega_pair(V: ProductProj, a: int, b: int) -> KClass:
    if a > b:
        a, b = b, a
    return sym_omega_kclass(V, a) * sym_omega_kclass(V, b)


@lru_cache(maxsize=None)
def l(V: VarietySpec, a: int) -> Fraction:
    """``chi(L^a)``."""
    if isinstance(V, Curve):
        return Fraction(a * V.degree + 1 - V.genus)
    return chi_line(V, tuple(a * d for d in V.line_bundle))


@lru_cache(maxsize=None)
def s1(V: VarietySpec, a: int, b: int) -> Fraction:
    """``chi(S^a Omega (x) L^b)``."""
    if a < 0:
        raise InputError(f"s1 needs a >= 0, got a={a}")
    if isinstance(V, Curve):
        return Fraction(a * (2 * V.genus - 2) + b * V.degree + 1 - V.genus)
    return chi_kclass(V, sym_omega_kclass(V, a), b)


@lru_cache(maxsize=None)
def s2(V: VarietySpec, a: int, b: int, c: int) -> Fraction:
    """``chi(S^a Omega (x) S^b Omega (x) L^c)``."""
    if a < 0 or b < 0:
        raise InputError(f"s2 needs a, b >= 0, got a={a}, b={b}")
    if isinstance(V, Curve):
        return Fraction((a + b) * (2 * V.genus - 2) + c * V.degree + 1 - V.genus)
    if b == 0:
        return s1(V, a, c)
    if a == 0:
        return s1(V, b, c)
    return chi_kclass(V, _sym_omega_pair(V, a, b), c)


# --- cohomological path -------------------------------------------------------

def chi_hrr(V: ProductProj, K: KClass, twist: int = 0) -> Fraction:
    """``chi(K (x) L^twist)`` by integrating ``ch(K) * td(X)``."""
    if not isinstance(V, ProductProj):
        raise InputError("chi_hrr needs a ProductProj model")
    if K.spec != V.ring:
        raise InputError("KClass does not live on this variety")
    total = Fraction(0)
    for e, c in K.terms():
        total += c * _hrr_line(V.ring, tuple(x + twist * d for x, d in zip(e, V.line_bundle)))
    return total


@lru_cache(maxsize=None)
def _hrr_line(spec: RingSpec, e: tuple[int, ...]) -> Fraction:
    """``integral of ch(O(e)) * td``; linear in the class, so cached per line bundle."""
    ch = exp_series(GradedClass.linear(spec, e))
    return integrate(ch * todd_class(spec))


def l_hrr(V: ProductProj, a: int) -> Fraction:
    return chi_hrr(V, KClass.trivial(V.ring), a)


def s1_hrr(V: ProductProj, a: int, b: int) -> Fraction:
    return chi_hrr(V, sym_omega_kclass(V, a), b)


def s2_hrr(V: ProductProj, a: int, b: int, c: int) -> Fraction:
    return chi_hrr(V, sym_omega_kclass(V, a) * sym_omega_kclass(V, b), c)


# --- Hodge data and positivity -------------------------------------------------

def hodge_vector(V: VarietySpec) -> HodgeVector:
    """``(h^0(O_X), ..., h^n(O_X))``."""
    if isinstance(V, Curve):
        return HodgeVector((1, V.genus))
    return HodgeVector((1,) + (0,) * V.dimension)


def gamma(V: VarietySpec) -> Fraction:
    """``sum_{i=1}^n (-1)^i h^i(O_X)``, i.e. ``chi(O_X) - 1``."""
    h = hodge_vector(V)
    return Fraction(sum((-1) ** i * h[i] for i in range(1, h.n + 1)))


def validate_positivity(V: VarietySpec, secant_index: int) -> Positivity:
    """Check ``L`` against the default positivity gates for the given secant variety.

    Writing ``L = omega_X (x) A^m`` with ``A`` very ample, the gate asks for
    ``m >= 2n+2`` (secant index 1) or ``m >= 3n+3`` (secant index 2).  Curves
    are additionally held to ``d >= 2g + 2k + 1``.
    """
    if secant_index not in (1, 2):
        raise InputError(f"secant index must be 1 or 2, got {secant_index!r}")
    n = V.dimension
    need_m = (secant_index + 1) * (n + 1)
    problems = []
    triggered = []
    if isinstance(V, Curve):
        g, d = V.genus, V.degree
        if d < 2 * g - 2 + need_m:
            triggered.append("twist-gate")
            problems.append(f"degree {d} < 2g - 2 + {need_m} = {2 * g - 2 + need_m}")
        lit = 2 * g + 2 * secant_index + 1
        if d < lit:
            triggered.append("curve-gate")
            problems.append(f"degree {d} < 2g + 2k + 1 = {lit}")
    else:
        m = min(d + ni + 1 for d, ni in zip(V.line_bundle, V.ring.factor_dims))
        if m < need_m:
            triggered.append("twist-gate")
            problems.append(f"L = omega (x) O(1,...,1)^{m} with {m} < {need_m}")
    if not problems:
        return Positivity(True)
    label = "Sigma_1" if secant_index == 1 else "Sigma_2"
    msg = f"{V.label()} may not be positive enough for {label}: " + "; ".join(problems)
    return Positivity(False, msg, tuple(triggered))
