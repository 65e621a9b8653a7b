from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from kummer_tower.errors import BoundExceeded, PreconditionViolated
from kummer_tower.quad_field import dyadic_generator, fundamental_unit
from kummer_tower.radical_orders import (RadicalElement, class_group_small, eta_is_not_degenerate,
                                         from_basis, is_integral, kth_root, norm_two_principality,
                                         order_is_maximal, radical_congruence, relative_unit,
                                         trace_valuation)


@st.composite
def radical_triple(draw):
    degree = draw(st.sampled_from([3, 4]))
    p = draw(st.sampled_from([2, 3, 5, 7, 13]))
    co = lambda: RadicalElement(degree, tuple(draw(st.lists(st.integers(-9, 9), min_size=degree,
                                                            max_size=degree))), p)
    return co(), co(), co()


@given(radical_triple())
@settings(max_examples=200)
def test_ring_axioms(t):
    a, b, c = t
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).norm() == a.norm() * b.norm()
    if not a.is_zero():
        assert a * a.inverse() == RadicalElement.rational(a.p, a.degree, 1)


@given(radical_triple(), st.sampled_from([2, 3]))
@settings(max_examples=100)
def test_kth_root_recovers(t, k):
    a = t[0]
    if a.is_zero():
        return
    r = kth_root(a ** k, k)
    assert r is not None and r ** k == a ** k


def test_theta_powers_and_integrality():
    th = RadicalElement.theta(5, 4)
    assert th ** 4 == RadicalElement.rational(5, 4, 5)
    # (1 + theta^2)/2 is integral when p = 1 mod 4
    assert is_integral(from_basis(5, 4, (0, 0, 1, 0)))
    assert not is_integral(RadicalElement(4, (Fraction(1, 2),), 7))
    assert order_is_maximal(7, 3) and not order_is_maximal(19, 3)


ETA_PRIMES = [7, 23, 71]


@pytest.mark.parametrize("p", ETA_PRIMES)
def test_relative_unit(p):
    eps = fundamental_unit(p)
    eta = relative_unit(p)
    assert eta.relative_norm() == eps
    assert abs(eta.norm()) == 1
    assert trace_valuation(eta, dyadic_generator(p)) == 3
    assert radical_congruence(eta)
    assert eta_is_not_degenerate(eta, eps)


def test_relative_unit_search():
    assert relative_unit(7, method="search") == relative_unit(7)
    # eta(23) has theta-coefficient 1995, far past a small height bound
    with pytest.raises(BoundExceeded):
        relative_unit(23, method="search", bound=50)


def test_relative_unit_precondition():
    with pytest.raises(PreconditionViolated):
        relative_unit(31)


def test_eta_example():
    assert tuple(relative_unit(7).coeffs) == (13, 8, 5, 3)


@pytest.mark.parametrize("p,want", [(2, "Principal"), (3, "Principal"), (5, "Principal"),
                                    (7, "NonPrincipal"), (11, "Principal"), (13, "Principal"),
                                    (17, "Inconclusive"), (23, "NonPrincipal")])
def test_norm_two_principality(p, want):
    v = norm_two_principality(p, 4)
    assert v.status == want
    if v.is_principal:
        assert abs(v.generator.norm()) == (4 if p % 8 == 5 else 2)


# published class numbers of pure cubic fields Q(p^(1/3))
PURE_CUBIC_H = {2: 1, 3: 1, 5: 1, 7: 3, 11: 2, 13: 3, 23: 1, 43: 12, 47: 2}


@pytest.mark.parametrize("p", sorted(PURE_CUBIC_H))
def test_cubic_class_number(p):
    r = class_group_small(p, 3)
    assert r.status == "Certified"
    h = 1
    for x in r.invariants:
        h *= x
    assert h == PURE_CUBIC_H[p]


def test_three_does_not_divide_h_for_p_2_mod_3():
    for p in primerange(2, 110):
        if p % 3 == 2 and order_is_maximal(p, 3):
            assert class_group_small(p, 3).sylow == []


def test_cubic_principality_of_prime_above_3():
    # Q(2^(1/3)) has class number 1, so the prime above 3 is principal
    v = norm_two_principality(2, 3)
    assert v.is_principal and abs(v.generator.norm()) == 3
    assert norm_two_principality(7, 3, target=7).is_principal
