from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint, legendre_symbol

from kummer_tower.errors import OrderMismatch, PrecisionTooLow, UnsupportedCase, WildPlace
from kummer_tower.exact_arith import RootOfUnity, build_residue_field
from kummer_tower.local_symbols import (REAL, TAME, WILD, PlaceDescriptor, ValuedElement,
                                        complete_product, norm_oracle, real_symbol, tame_symbol)

# (prime, symbol order) pairs with n | q - 1 in the residue field of Q(zeta_n)
TAME_CASES = [(5, 4), (13, 4), (7, 3), (19, 9), (3, 8), (17, 8), (11, 2), (41, 8), (2, 3)]


def _place(q, n):
    return PlaceDescriptor(TAME, "v%d" % q, residue_field=build_residue_field(q, n))


def _unit(F, coeffs):
    u = F.elt(tuple(coeffs))
    return u if any(u) else F.one()


@st.composite
def local_pair(draw):
    q, n = draw(st.sampled_from(TAME_CASES))
    v = _place(q, n)
    F = v.residue_field

    def elt():
        cs = draw(st.lists(st.integers(0, q - 1), min_size=F.degree, max_size=F.degree))
        return ValuedElement(draw(st.integers(-3, 3)), _unit(F, cs))
    return v, n, elt(), elt(), elt()


def _mul(F, a, b):
    return ValuedElement(a.valuation + b.valuation, F.mul(a.unit_part, b.unit_part))


def _neg(F, a):
    return ValuedElement(a.valuation, F.neg(a.unit_part))


@given(local_pair())
@settings(max_examples=1000)
def test_tame_bilinear(data):
    v, n, a, b, c = data
    F = v.residue_field
    assert tame_symbol(_mul(F, a, c), b, v, n) == tame_symbol(a, b, v, n) * tame_symbol(c, b, v, n)
    assert tame_symbol(a, _mul(F, b, c), v, n) == tame_symbol(a, b, v, n) * tame_symbol(a, c, v, n)


@given(local_pair())
@settings(max_examples=1000)
def test_tame_antisymmetric(data):
    v, n, a, b, _ = data
    assert (tame_symbol(a, b, v, n) * tame_symbol(b, a, v, n)).is_one()


@given(local_pair())
@settings(max_examples=1000)
def test_a_minus_a(data):
    v, n, a, _, _ = data
    assert tame_symbol(a, _neg(v.residue_field, a), v, n).is_one()


def classical_hilbert(a, b, p):
    """Hilbert symbol (a, b)_p over Q_p for nonzero integers, as +-1."""
    def split(x):
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        return k, x
    al, u = split(a)
    be, w = split(b)
    if p != 2:
        s = (-1) ** (al * be * ((p - 1) // 2))
        return s * legendre_symbol(u % p, p) ** be * legendre_symbol(w % p, p) ** al
    e = lambda x: ((x - 1) // 2) % 2
    o = lambda x: ((x * x - 1) // 8) % 2
    return (-1) ** ((e(u) * e(w) + al * o(w) + be * o(u)) % 2)


def test_tame_matches_classical_quadratic():
    for q in (3, 5, 7, 11, 13):
        v = _place(q, 2)
        F = v.residue_field
        for a in range(-40, 41):
            for b in range(-40, 41):
                if a == 0 or b == 0:
                    continue
                va = ValuedElement(*_split(a, q, F))
                vb = ValuedElement(*_split(b, q, F))
                want = classical_hilbert(a, b, q)
                assert tame_symbol(va, vb, v, 2) == RootOfUnity(2, 0 if want == 1 else 1)


def _split(x, q, F):
    k = 0
    while x % q == 0:
        x //= q
        k += 1
    return k, F.elt(x)


def completed_symbol_at_2(a, b):
    """(a, b)_2 from the odd places and the real place via the product formula."""
    parts = [real_symbol(1 if a > 0 else -1, 1 if b > 0 else -1)]
    for q in set(factorint(abs(a))) | set(factorint(abs(b))):
        if q == 2:
            continue
        F = build_residue_field(q, 2)
        parts.append(tame_symbol(ValuedElement(*_split(a, q, F)), ValuedElement(*_split(b, q, F)),
                                 _place(q, 2), 2))
    return complete_product(parts, 2)


SQUAREFREE = [a for a in range(-30, 31) if a and all(a % (k * k) for k in (2, 3, 5))]


def test_norm_oracle_agrees_with_completed_symbols():
    cases = 0
    for a in SQUAREFREE:
        for b in SQUAREFREE:
            sym = completed_symbol_at_2(a, b)
            assert sym.is_one() == (classical_hilbert(a, b, 2) == 1)
            assert norm_oracle(a, b, (2, None)) == sym.is_one()
            cases += 1
    assert cases >= 1000


@given(st.integers(-300, 300), st.integers(-300, 300))
@settings(max_examples=300)
def test_norm_oracle_at_3(a, b):
    if a == 0 or b == 0:
        return
    assert norm_oracle(a, b, (3, None)) == (classical_hilbert(a, b, 3) == 1)


def test_norm_oracle_rationals_and_extensions():
    assert norm_oracle(Fraction(3, 4), 3, (2, None)) == norm_oracle(3, 3, (2, None))
    # -1 is a norm from Q_2(i)(sqrt 2)? -1 = i^2 is a square already
    assert norm_oracle(-1, 2, (2, "i"))
    # 3 is not a square in Q_2(i), so Q_2(i, sqrt 3) is a proper extension
    assert norm_oracle(1, 3, (2, "i"))


def test_norm_oracle_guards():
    with pytest.raises(UnsupportedCase):
        norm_oracle(3, 5, (2, None), n=4)
    with pytest.raises(PrecisionTooLow):
        norm_oracle(3, 5, (2, None), precision=2)
    with pytest.raises(ValueError):
        norm_oracle(0, 5, (2, None))
    with pytest.raises(UnsupportedCase):
        norm_oracle(3, 2, (5, None))


def test_place_and_order_guards():
    with pytest.raises(ValueError):
        PlaceDescriptor(TAME, "x")
    with pytest.raises(ValueError):
        ValuedElement(0, 2)
    v = _place(5, 4)
    with pytest.raises(WildPlace):
        tame_symbol(ValuedElement(0, (1,)), ValuedElement(0, (2,)), PlaceDescriptor(WILD, "2"), 4)
    with pytest.raises(OrderMismatch):
        tame_symbol(ValuedElement(0, (1,)), ValuedElement(0, (2,)), v, 8)
    with pytest.raises(OrderMismatch):
        complete_product([RootOfUnity(2, 1), RootOfUnity(4, 1)])
    with pytest.raises(OrderMismatch):
        complete_product([])
    assert PlaceDescriptor(REAL, "inf").kind == REAL


def test_fixture_symbols():
    from kummer_tower.cyclo_field import gaussian_place, gaussian_tame_symbol
    assert gaussian_tame_symbol((0, 1), (11, 0), gaussian_place(11), 4) == RootOfUnity(4, 2)
    assert gaussian_tame_symbol((0, 1), (3, 0), gaussian_place(3), 4) == RootOfUnity(4, 2)
