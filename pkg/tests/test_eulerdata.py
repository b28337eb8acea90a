from fractions import Fraction
from itertools import product
from math import comb

import pytest

from secanthilbert import eulerdata as ed
from secanthilbert.eulerdata import Curve, KClass, ProductProj
from secanthilbert.exactring import InputError, RingSpec

P1_6 = ProductProj.of([1], [6])
P2_1 = ProductProj.of([2], [1])
P2_8 = ProductProj.of([2], [8])
P1P1 = ProductProj.of([1, 1], [4, 4])
P1P2 = ProductProj.of([1, 2], [2, 3])
PRODUCTS = [P1_6, P2_8, P1P1, P1P2, ProductProj.of([3], [2])]


def brute_h0(n: int, d: int) -> int:
    """Monomials of degree d in n+1 variables, by enumeration."""
    return sum(1 for e in product(range(d + 1), repeat=n + 1) if sum(e) == d)


def test_chi_line_examples():
    assert ed.chi_line(P2_8, 3) == 10
    assert ed.chi_line(P1P1, (2, 3)) == 12
    assert ed.chi_line(ProductProj.of([1], [1]), -2) == -1
    assert ed.chi_line(Curve(2, 9), 5) == 4


def test_chi_line_matches_monomial_count():
    for n in (1, 2, 3):
        V = ProductProj.of([n], [1])
        for d in range(6):
            assert ed.chi_line(V, d) == brute_h0(n, d)


def test_chi_line_serre_duality():
    # chi(O(e)) = (-1)^n chi(O(-e-n-1)) on P^n
    for n in (1, 2, 3):
        V = ProductProj.of([n], [1])
        for e in range(-8, 8):
            assert ed.chi_line(V, e) == (-1) ** n * ed.chi_line(V, -e - n - 1)


def test_chi_line_arity_mismatch():
    with pytest.raises(InputError):
        ed.chi_line(P1P1, 3)
    with pytest.raises(InputError):
        ed.chi_line(Curve(0, 3), (1, 2))


def test_sym_omega_examples():
    for V in PRODUCTS:
        assert ed.sym_omega_kclass(V, 0) == KClass.trivial(V.ring)
    P1 = ProductProj.of([1], [1])
    s2 = ed.sym_omega_kclass(P1, 2)
    assert s2 == KClass(P1.ring, {(-2,): 3, (-1,): -2})
    # equals [O(-4)] in K(P^1): rank 1, degree -4, chi((S^2 Omega)(b)) = b - 3
    assert s2.rank == 1
    assert s2.first_chern() == (-4,)
    for b in range(-5, 10):
        assert ed.chi_kclass(P1, s2, b) == b - 3
    P2 = ProductProj.of([2], [1])
    assert ed.sym_omega_kclass(P2, 1) == KClass(P2.ring, {(-1,): 3, (0,): -1})


def test_sym_omega_rank():
    for n in (1, 2, 3, 4):
        V = ProductProj.of([n], [1])
        for j in range(8):
            assert ed.sym_omega_kclass(V, j).rank == comb(j + n - 1, n - 1)


def test_sym_omega_of_product_is_convolution():
    # S^j(Omega_1 + Omega_2) = sum over j1 + j2 = j of S^j1 Omega_1 (x) S^j2 Omega_2
    V = P1P2
    for j in range(6):
        total = KClass(V.ring)
        for j1 in range(j + 1):
            a = ed.sym_omega_kclass(ProductProj.of([1], [1]), j1)
            b = ed.sym_omega_kclass(ProductProj.of([2], [1]), j - j1)
            for (e1,), c1 in a.terms():
                for (e2,), c2 in b.terms():
                    total = total + KClass.line(V.ring, (e1, e2), c1 * c2)
        assert ed.sym_omega_kclass(V, j) == total
        assert ed.sym_omega_kclass(V, j).rank == comb(j + 2, 2)


def test_l_examples():
    assert ed.l(Curve(2, 9), 3) == 26
    assert ed.l(P2_1, 3) == 10
    assert ed.l(Curve(3, 10), 0) == 1 - 3
    assert ed.l(P1P1, 0) == 1


def test_s1_examples():
    # Euler sequence: S^1 Omega = 3 O(-1) - O on P^2
    assert ed.s1(P2_1, 1, 2) == 3 * ed.chi_line(P2_1, 1) - ed.chi_line(P2_1, 2) == 3
    assert ed.s1(P2_1, 1, 1) == 3 * ed.chi_line(P2_1, 0) - ed.chi_line(P2_1, 1) == 0
    assert ed.s1(Curve(0, 4), 1, 3) == 11
    with pytest.raises(InputError):
        ed.s1(P2_1, -1, 0)


def test_s2_examples():
    for V in [Curve(1, 8), *PRODUCTS]:
        for a in range(4):
            for c in range(-2, 5):
                assert ed.s2(V, a, 0, c) == ed.s1(V, a, c)
    assert ed.s2(Curve(0, 4), 1, 0, 3) == 11
    assert ed.s2(ProductProj.of([1], [4]), 1, 1, 1) == 1
    with pytest.raises(InputError):
        ed.s2(P2_8, 0, -1, 0)


def test_s0_reduces_to_l():
    for V in [Curve(0, 4), Curve(2, 9), *PRODUCTS]:
        for b in range(-3, 9):
            assert ed.s1(V, 0, b) == ed.l(V, b)
            assert ed.s2(V, 0, 0, b) == ed.l(V, b)


def test_chi_hrr_examples():
    assert ed.chi_hrr(P2_1, KClass.trivial(P2_1.ring), 3) == 10
    with pytest.raises(InputError):
        ed.chi_hrr(P2_1, KClass.trivial(RingSpec((1,))), 0)


@pytest.mark.parametrize("V", PRODUCTS, ids=lambda V: V.label())
def test_path_equivalence(V):
    for c in range(-3, 9):
        assert ed.l(V, c) == ed.l_hrr(V, c)
        for a in range(7):
            assert ed.s1(V, a, c) == ed.s1_hrr(V, a, c)
            for b in range(7):
                assert ed.s2(V, a, b, c) == ed.s2_hrr(V, a, b, c)


@pytest.mark.parametrize("d", [1, 4, 6, 9])
def test_curve_and_product_models_agree_on_p1(d):
    C, P = Curve(0, d), ProductProj.of([1], [d])
    for a, b, c in product(range(7), range(7), range(-3, 9)):
        assert ed.l(C, c) == ed.l(P, c)
        assert ed.s1(C, a, c) == ed.s1(P, a, c)
        assert ed.s2(C, a, b, c) == ed.s2(P, a, b, c)


def test_hodge_vector_and_gamma():
    assert ed.hodge_vector(Curve(3, 10)).dims == (1, 3)
    assert ed.hodge_vector(P2_8).dims == (1, 0, 0)
    assert ed.hodge_vector(P1P1).dims == (1, 0, 0)
    assert ed.gamma(Curve(4, 12)) == -4
    assert ed.gamma(Curve(0, 3)) == 0
    assert ed.gamma(P1P2) == 0
    for V in [Curve(0, 4), Curve(2, 9), Curve(5, 20), *PRODUCTS]:
        assert ed.gamma(V) == ed.l(V, 0) - 1


def test_hodge_vector_validation():
    with pytest.raises(InputError):
        ed.HodgeVector((2, 0))


def test_positivity_examples():
    assert ed.validate_positivity(Curve(0, 4), 1).ok
    bad = ed.validate_positivity(Curve(0, 3), 2)
    assert not bad.ok and "twist-gate" in bad.triggered and "curve-gate" in bad.triggered
    assert ed.validate_positivity(P2_8, 1).ok
    assert ed.validate_positivity(P2_8, 2).ok
    assert not ed.validate_positivity(P2_1, 2).ok
    assert ed.validate_positivity(P1P1, 1).ok
    assert not ed.validate_positivity(P1P1, 2).ok


def test_positivity_reports_which_curve_gate_fired():
    # d = 2g + 4 passes the twist gate for Sigma_2 but not d >= 2g + 5
    p = ed.validate_positivity(Curve(1, 6), 2)
    assert not p.ok and p.triggered == ("curve-gate",)
    assert ed.validate_positivity(Curve(1, 7), 2).ok


def test_variety_validation_and_roundtrip():
    with pytest.raises(InputError):
        Curve(-1, 3)
    with pytest.raises(InputError):
        ProductProj.of([1, 1], [2])
    with pytest.raises(InputError):
        ed.variety_from_dict({"space": "torus"})
    for V in [Curve(2, 9), P1P2]:
        assert ed.variety_from_dict(V.to_dict()) == V


def test_kclass_algebra():
    R = RingSpec((1, 1))
    a = KClass(R, {(1, 0): 2, (0, -1): Fraction(1, 2)})
    b = KClass.line(R, (-1, 3))
    assert (a * b) == KClass(R, {(0, 3): 2, (-1, 2): Fraction(1, 2)})
    assert (a - a) == KClass(R)
    assert a.rank == Fraction(5, 2)
    with pytest.raises(InputError):
        a * KClass.trivial(RingSpec((2,)))
