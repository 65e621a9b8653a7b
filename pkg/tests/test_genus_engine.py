from dataclasses import replace
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from kummer_tower.cyclo_field import sunit_set
from kummer_tower.errors import NonIntegral, TwoWildPlaces, UnsupportedCase
from kummer_tower.exact_arith import RootOfUnity
from kummer_tower.genus_engine import (build_case, chevalley_order, derived_square_image,
                                       dyadic_class_certificate, gras_order, index_table_5mod8,
                                       k31_k21_steps, ramification_product, rho_image,
                                       rho_image_two_wild, rho_row, swap_embeddings,
                                       symbol_obstruction)

P3 = [p for p in primerange(3, 200) if p % 8 == 3]
P5 = [p for p in primerange(5, 200) if p % 8 == 5]
P7 = [p for p in primerange(7, 300) if p % 16 == 7]
P47 = [p for p in primerange(5, 200) if p % 9 in (4, 7)]
P25 = [p for p in primerange(2, 200) if p % 9 in (2, 5)]

# (case key, primes, generator set, needs p for the generators)
CASES = [
    ("K22/K02", P3 + P5, "Lambda02_zeta8", False),
    ("K32/K02", P5, "Lambda02_zeta8", False),
    ("K21/K01", P5, "Lambda01_i", False),
    ("K12/K02", P5, "E02_zeta8", False),
    ("K(k+1)0/Kk0:1", P7, "LambdaD_K10", True),
    ("K(k+1)0/Kk0:2", P7[:4], "LambdaD_K10", True),
    ("Kk1/Kk0:1", P7, "E10", True),
    ("K22/K02:ell3", P47, "LambdaD_zeta9", False),
    ("K12/K02:ell3", P25, "E02_zeta9", False),
]
CYCLO_CASES = [c for c in CASES if not c[3]]


def _gens(spec, p):
    return list(sunit_set(spec[2], p if spec[3] else None))


@st.composite
def case_and_exponents(draw, cases=CASES):
    spec = draw(st.sampled_from(cases))
    p = draw(st.sampled_from(spec[1]))
    gens = _gens(spec, p)
    ks = draw(st.lists(st.integers(0, 3), min_size=len(gens), max_size=len(gens)))
    return build_case(spec[0], p), gens, ks


@given(case_and_exponents())
@settings(max_examples=1000)
def test_rho_is_a_homomorphism_with_vanishing_row_sums(data):
    case, gens, ks = data
    x = reduce(lambda a, b: a * b, [g ** k for (_, g), k in zip(gens, ks)])
    row = rho_row(x, case)
    assert sum(row) % case.n == 0
    rows = [rho_row(g, case) for _, g in gens]
    want = [sum(k * r[j] for k, r in zip(ks, rows)) % case.n for j in range(len(row))]
    assert row == want


@given(case_and_exponents(CYCLO_CASES))
@settings(max_examples=1000)
def test_swap_invariance(data):
    case, gens, ks = data
    sub = [g for g, k in zip(gens, ks) if k]
    assert rho_image(swap_embeddings(case), sub).order == rho_image(case, sub).order


@pytest.mark.parametrize("spec", CASES, ids=[c[0] for c in CASES])
def test_units_image_divides_sunits_image(spec):
    small = {"Lambda02_zeta8": "E02_zeta8", "Lambda01_i": "E01_i", "LambdaD_K10": "E10",
             "LambdaD_zeta9": "E02_zeta9"}
    for p in spec[1][:6]:
        case = build_case(spec[0], p)
        big = rho_image(case, _gens(spec, p)).order
        if spec[2] in small:
            e = rho_image(case, sunit_set(small[spec[2]], p if spec[3] else None)).order
            assert big % e == 0


def test_square_of_order8_symbol_is_order4_symbol():
    for p in P5:
        c8, c4 = build_case("K32/K02", p), build_case("K22/K02", p)
        for _, g in sunit_set("Lambda02_zeta8"):
            assert [e % 4 for e in rho_row(g, c8)] == rho_row(g, c4)


def test_derived_square_image_guard():
    c8, c4 = build_case("K32/K02", 5), build_case("K22/K02", 5)
    img = rho_image(c8, sunit_set("E02_zeta8"))
    with pytest.raises(UnsupportedCase):
        derived_square_image(c8, img, build_case("K12/K02", 5))
    same = derived_square_image(c8, img, replace(c4, places=c8.places))
    assert same.n == 4


@given(st.integers(0, 6), st.integers(0, 8), st.integers(0, 4), st.integers(0, 6))
@settings(max_examples=300)
def test_chevalley_equals_gras_with_trivial_C(h, e, deg, idx):
    h, e, deg, idx = 2 ** h, 2 ** e, 2 ** deg, 2 ** idx
    try:
        want = chevalley_order(h, e, deg, idx)
    except NonIntegral:
        with pytest.raises(NonIntegral):
            gras_order(h, 1, e, deg, idx)
        return
    assert gras_order(h, 1, e, deg, idx) == want == h * e // (deg * idx)


def test_index_table_5mod8():
    for p in (p for p in primerange(5, 500) if p % 8 == 5):
        assert tuple(index_table_5mod8(p).values()) == (32, 16, 8, 4, 2)


def test_3mod8_unit_image():
    for p in P3:
        case = build_case("K22/K02", p)
        assert ramification_product(case) == 32
        assert rho_image(case, sunit_set("E02_zeta8")).order == 8


def test_ell3_images():
    for p in (7, 13, 31, 43, 79, 97):
        c = build_case("K22/K02:ell3", p)
        assert rho_image(c, sunit_set("LambdaD_zeta9")).order == 81
        assert rho_image(c, sunit_set("E02_zeta9")).order == 27
        assert ramification_product(c) == 729


def test_7mod16_steps():
    for p in P7[:5]:
        s31, s21 = k31_k21_steps(p)
        assert (s31.index, s31.prod_e, s31.value) == (4, 64, 4)
        assert (s21.index, s21.prod_e, s21.value) == (1, 8, 4)
        assert dyadic_class_certificate(p)


def test_two_wild_places():
    case = build_case("K31/K11", 7)
    with pytest.raises(TwoWildPlaces):
        rho_image(case, sunit_set("E11", 7))
    direct, orders = rho_image_two_wild(case, sunit_set("E11", 7), ambiguous=("pi/(1+i)",))
    assert orders == {direct.order} == {4}


def test_symbol_obstruction():
    for p in (2, 5, 11, 23, 29, 7, 13):
        assert not symbol_obstruction(p, 3).is_one()
    # zeta_3 is a cube mod p exactly when p = 1 mod 9
    assert symbol_obstruction(19, 3).is_one()
    # <-1, 5> at a place of Q(i) above 5: -1 is a square mod 5
    assert symbol_obstruction(5, 2) == RootOfUnity(2, 0)


def test_ramification_products():
    want = {("K22/K02", 3): 32, ("K32/K02", 5): 256, ("K21/K01", 5): 32, ("K12/K02", 5): 4,
            ("K21/K11", 7): 8, ("K31/K11", 7): 64, ("Kk1/Kk0:1", 7): 4, ("K12/K02:ell3", 3): 3,
            ("K22/K02:ell3", 2): 81}
    for (key, p), e in want.items():
        assert ramification_product(build_case(key, p)) == e, key


def test_unknown_case():
    with pytest.raises(UnsupportedCase):
        build_case("K99/K00", 7)
