"""Self-verification suites run by ``secanthilbert verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import eulerdata as ed
from . import secantpoly as sp
from . import tautcoh as tc
from .eulerdata import Curve, ProductProj, VarietySpec
from .exactring import GradedClass, RingSpec, exp_series, todd_class

CORPUS: tuple[VarietySpec, ...] = (
    Curve(0, 6),
    Curve(1, 8),
    Curve(2, 9),
    ProductProj.of([1], [6]),
    ProductProj.of([2], [8]),
    ProductProj.of([1, 1], [4, 4]),
)
EXTENDED_CORPUS: tuple[VarietySpec, ...] = CORPUS + (
    Curve(3, 12),
    ProductProj.of([1, 2], [4, 5]),
    ProductProj.of([3], [9]),
)
PRODUCT_MODELS = tuple(V for V in CORPUS if isinstance(V, ProductProj))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""


Comparison = tuple[str, object, object]


def _run(name: str, comparisons: Iterable[Comparison]) -> CheckResult:
    count = 0
    try:
        for label, got, want in comparisons:
            count += 1
            if got != want:
                return CheckResult(name, False, count, f"{label}: got {got}, expected {want}")
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        return CheckResult(name, False, count, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True, count)


def _binom(x: int, n: int) -> Fraction:
    # independent of eulerdata.binomial_poly on purpose
    if n < 0:
        return Fraction(0)
    if x >= 0:
        return Fraction(comb(x, n))
    num = 1
    for i in range(n):
        num *= x - i
    return Fraction(num, factorial(n))


# --- individual checks ----------------------------------------------------------

def check_ring() -> Iterator[Comparison]:
    p1, p2 = RingSpec((1,)), RingSpec((2,))
    h1, h2 = GradedClass.generator(p1, 0), GradedClass.generator(p2, 0)
    yield "td(P^1)", todd_class(p1), GradedClass(p1, {(0,): 1, (1,): 1})
    yield "td(P^2)", todd_class(p2), GradedClass(p2, {(0,): 1, (1,): Fraction(3, 2), (2,): 1})
    yield "exp(h) on P^2", exp_series(h2), GradedClass(p2, {(0,): 1, (1,): 1, (2,): Fraction(1, 2)})
    yield "h*h on P^1", h1 * h1, GradedClass.zero(p1)


def check_path_equivalence(models: Iterable[ProductProj] = PRODUCT_MODELS, top: int = 6) -> Iterator[Comparison]:
    for V in models:
        for c in range(-3, 9):
            yield f"{V.label()} l({c})", ed.l(V, c), ed.l_hrr(V, c)
            for a in range(top + 1):
                yield f"{V.label()} s1({a},{c})", ed.s1(V, a, c), ed.s1_hrr(V, a, c)
                for b in range(top + 1):
                    yield f"{V.label()} s2({a},{b},{c})", ed.s2(V, a, b, c), ed.s2_hrr(V, a, b, c)


def check_curve_consistency(degrees: Iterable[int] = (4, 6)) -> Iterator[Comparison]:
    for d in degrees:
        C, P = Curve(0, d), ProductProj.of([1], [d])
        for a, b, c in product(range(7), range(7), range(-3, 9)):
            if a == 0 and b == 0:
                yield f"d={d} l({c})", ed.l(C, c), ed.l(P, c)
            if b == 0:
                yield f"d={d} s1({a},{c})", ed.s1(C, a, c), ed.s1(P, a, c)
            yield f"d={d} s2({a},{b},{c})", ed.s2(C, a, b, c), ed.s2(P, a, b, c)


def check_rnc_oracles(ells: Iterable[int] = range(-3, 13)) -> Iterator[Comparison]:
    ells = list(ells)
    cases: list[tuple[VarietySpec, int, Callable[[int], Fraction]]] = [
        (Curve(0, 3), 1, lambda x: _binom(x + 3, 3)),
        (Curve(0, 4), 1, lambda x: _binom(x + 4, 4) - _binom(x + 1, 4)),
        (Curve(0, 5), 2, lambda x: _binom(x + 5, 5)),
        (Curve(0, 6), 2, lambda x: _binom(x + 6, 6) - _binom(x + 2, 6)),
    ]
    for V, k, oracle in cases:
        P = sp.secant_polynomial(V, k)
        for x in ells:
            yield f"{V.label()} P_Sigma{k}({x})", P(x), oracle(x)


def check_dual_path(corpus: Iterable[VarietySpec] = CORPUS) -> Iterator[Comparison]:
    for V in corpus:
        for m in range(3 * V.dimension + 3):
            yield f"{V.label()} m={m}", sp.sigma2_node(V, m), sp.sigma2_node_alt(V, m)


def check_polynomiality(corpus: Iterable[VarietySpec] = CORPUS) -> Iterator[Comparison]:
    for V in corpus:
        n = V.dimension
        P1, P2 = sp.sigma1_polynomial(V), sp.sigma2_polynomial(V)
        for m in (2 * n + 2, 2 * n + 3):
            yield f"{V.label()} Sigma1 node m={m}", sp.sigma1_node(V, m), P1(2 * m + 1)
        m = 3 * n + 3
        yield f"{V.label()} Sigma2 node m={m}", sp.sigma2_node(V, m), P2(3 * m + 2)


def check_anchors(corpus: Iterable[VarietySpec] = CORPUS) -> Iterator[Comparison]:
    for V in corpus:
        yield f"{V.label()} P_Sigma1(1)", sp.sigma1_polynomial(V)(1), ed.l(V, 1)
        yield f"{V.label()} P_Sigma2(1)", sp.sigma2_polynomial(V)(1), ed.l(V, 1)
        for ell in range(1, 7):
            yield f"{V.label()} euler(k=2, l={ell})", tc.euler_check(V, 2, ell), sp.chi_sym_e2_twist(V, ell, 0)


def check_tables(corpus: Iterable[VarietySpec] = CORPUS) -> Iterator[Comparison]:
    for V in corpus:
        n = V.dimension
        for k in (2, 3):
            for ell in range(1, 7):
                col = tc.column(V, k, ell)
                yield f"{V.label()} k={k} l={ell} length", len(col), (k - 1) * n + 1
                for i, v in enumerate(col):
                    yield f"{V.label()} k={k} h^{i}(l={ell}) integral", v.denominator == 1 and v >= 0, True
                if isinstance(V, Curve):
                    g, d = V.genus, V.degree
                    if k == 2:
                        yield f"{V.label()} k=2 h^1(l={ell})", col[1], g * (ell * d + 1 - g)
                    else:
                        yield f"{V.label()} k=3 h^2(l={ell})", col[2], comb(g, 2) * (ell * d + 1 - g)


def check_degree_law() -> Iterator[Comparison]:
    for g in range(4):
        for d in range(2 * g + 4, 2 * g + 10):
            V = Curve(g, d)
            if not ed.validate_positivity(V, 1).ok:
                continue
            yield f"{V.label()} deg Sigma1", sp.report(V, 1).degree, comb(d - 1, 2) - g


def check_sigma2_degree_law() -> Iterator[Comparison]:
    # classical degree of the secant-plane variety of a curve
    for g in range(4):
        for d in range(2 * g + 5, 2 * g + 10):
            V = Curve(g, d)
            if not ed.validate_positivity(V, 2).ok:
                continue
            yield f"{V.label()} deg Sigma2", sp.report(V, 2).degree, comb(d - 2, 3) - g * (d - 4)


def check_hodge_ox2(max_entry: int = 4, max_n: int = 3) -> Iterator[Comparison]:
    for n in range(1, max_n + 1):
        for tail in product(range(max_entry + 1), repeat=n):
            h = ed.HodgeVector((1,) + tail)
            yield f"h={h.dims}", tc.hodge_ox2(h), symmetrized_kunneth(h)


def symmetrized_kunneth(h: ed.HodgeVector) -> tuple[int, ...]:
    """Invariant dimensions of the swap on ``H^*(O_X)^{(x)2}`` by explicit enumeration.

    The swap sends ``u (x) v`` (degrees ``p, q``) to ``(-1)^{pq} v (x) u``; the
    invariants in degree ``i`` are counted orbit by orbit over basis tensors.
    """
    basis = [(p, j) for p in range(h.n + 1) for j in range(h[p])]
    out = [0] * (2 * h.n + 1)
    for x in basis:
        for y in basis:
            if x > y:
                continue
            deg = x[0] + y[0]
            if x == y:
                # u (x) u is fixed up to the Koszul sign
                out[deg] += 1 if (x[0] * x[0]) % 2 == 0 else 0
            else:
                out[deg] += 1
    return tuple(out)


def check_cache(cache_dir: Path | str) -> Iterator[Comparison]:
    from .batch import ResultCache, ResultEnvelope, recompute_envelope

    for path in ResultCache(cache_dir).entries():
        text = path.read_text(encoding="utf-8")
        env = ResultEnvelope.from_json(text)
        fresh = recompute_envelope(env).to_json()
        yield f"cache entry {path.name}", text, fresh


SUITES: dict[str, list[tuple[str, Callable[[], Iterable[Comparison]]]]] = {
    "default": [
        ("ring", check_ring),
        ("path-equivalence", check_path_equivalence),
        ("curve-consistency", check_curve_consistency),
        ("rnc-oracles", check_rnc_oracles),
        ("dual-path", check_dual_path),
        ("polynomiality", check_polynomiality),
        ("anchors", check_anchors),
        ("tables", check_tables),
    ],
}
SUITES["extended"] = SUITES["default"] + [
    ("degree-law", check_degree_law),
    ("degree-law-sigma2", check_sigma2_degree_law),
    ("hodge-ox2", check_hodge_ox2),
    ("dual-path-extended", lambda: check_dual_path(EXTENDED_CORPUS[len(CORPUS):])),
    ("polynomiality-extended", lambda: check_polynomiality(EXTENDED_CORPUS[len(CORPUS):])),
    ("anchors-extended", lambda: check_anchors(EXTENDED_CORPUS[len(CORPUS):])),
]


def run_suite(name: str, cache_dir: Path | str | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    results = [_run(check_name, fn()) for check_name, fn in SUITES[name]]
    if cache_dir is not None:
        results.append(_run("cache-integrity", check_cache(cache_dir)))
    return results
