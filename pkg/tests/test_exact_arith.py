import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint as sp_factorint, isprime as sp_isprime, n_order, totient

from kummer_tower.errors import BadOrder, CompositeModulus
from kummer_tower.exact_arith import (RootOfUnity, build_residue_field, euler_phi, factorint,
                                      is_prime, legendre, mult_order, sqrt_mod_prime_power,
                                      unit_character, valuation)
from oracles import fields_up_to, nth_power_oracle


def test_is_prime_matches_sympy():
    assert [n for n in range(-5, 3000) if is_prime(n)] == [n for n in range(-5, 3000) if sp_isprime(n)]


@given(st.integers(2, 10**12))
@settings(max_examples=300)
def test_factorint_and_phi(n):
    assert factorint(n) == dict(sp_factorint(n))
    assert euler_phi(n) == totient(n)


@given(st.integers(1, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_valuation(n, q):
    v = valuation(n, q)
    assert n % q**v == 0 and n % q ** (v + 1) != 0


@given(st.sampled_from([3, 5, 7, 11, 13, 101]), st.integers(1, 3), st.integers(1, 10**6))
def test_sqrt_mod_prime_power(q, k, a):
    a = (a * a) % q**k
    if a % q == 0:
        return
    r = sqrt_mod_prime_power(a, q, k)
    assert (r * r - a) % q**k == 0


def test_legendre_and_order():
    for p in (3, 7, 31, 101):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)
            assert mult_order(a, p) == n_order(a, p)


def test_root_of_unity_arithmetic():
    z = RootOfUnity(8, 3)
    assert (z * z.inverse()).is_one()
    assert z.multiplicative_order() == 8
    assert (z ** 8).is_one()
    assert RootOfUnity(8, 3).squared_down() == RootOfUnity(4, 3)
    assert RootOfUnity(4, 1).lifted(8) == RootOfUnity(8, 2)


@pytest.mark.parametrize("p,n,deg", [(5, 4, 1), (3, 4, 2), (7, 8, 2), (3, 8, 2), (2, 9, 6), (17, 16, 1)])
def test_residue_field_shape(p, n, deg):
    F = build_residue_field(p, n)
    assert F.degree == deg
    assert F.mult_order(F.zeta_image) == n
    # Phi_n(zeta) == 0 through the powers: zeta^n = 1, zeta^(n/r) != 1
    assert F.pow(F.zeta_image, n) == F.one()


def test_residue_field_errors():
    with pytest.raises(CompositeModulus):
        build_residue_field(9, 4)
    with pytest.raises(BadOrder):
        build_residue_field(2, 4)
    F = build_residue_field(5, 4)
    with pytest.raises(BadOrder):
        unit_character(F.one(), 3, F)


@pytest.mark.parametrize("N", [3, 4, 8, 9])
def test_unit_character_small_fields(N):
    for F in fields_up_to(300, [N]):
        for n in (d for d in range(2, N + 1) if N % d == 0):
            powers, nonzero = nth_power_oracle(F, n)
            assert len(powers) == (F.q - 1) // n
            for u in nonzero:
                assert unit_character(u, n, F).is_one() == (u in powers)


def test_unit_character_is_homomorphism():
    F = build_residue_field(3, 8)    # F_9
    for u in F.elements():
        for w in F.elements():
            if any(u) and any(w):
                assert unit_character(F.mul(u, w), 8, F) == unit_character(u, 8, F) * unit_character(w, 8, F)
    assert unit_character(F.zeta_image, 8, F) == RootOfUnity(8, 1)
