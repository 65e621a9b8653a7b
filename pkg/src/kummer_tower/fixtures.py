"""Pinned expected values: the theorem-level claims each case must produce and
the fixture suite run by `selftest`.  Nothing in the computation path reads
this module."""
from .exact_arith import is_prime

# claim id -> status required for `verify` to report a match
EXPECTED_CLAIMS = {
    "3 mod 8": {"c5": "Certified"},
    "5 mod 8": {"a32": "Certified", "a21": "Certified", "thm_a": "Certified",
                "thm_b": "Certified", "hn0": "Certified"},
    "7 mod 16": {"a20": "Certified", "thm_n1": "Certified", "thm_n0": "Certified",
                 "q20": "Certified", "a1m_gen": "Certified", "thm_1m": "Conditional"},
    "p=2": {"c5": "Conditional"},
    "2,5 mod 9": {"c5": "Certified", "lei": "Certified"},
    "p=3": {"c5": "Certified", "lei": "Certified"},
    "4,7 mod 9, symbol != 1": {"a22": "Certified", "thm_n0": "Certified", "lei": "Certified"},
}


def _primes(lo, hi, pred):
    return [p for p in range(lo, hi) if is_prime(p) and pred(p)]


def _fx_gauss_symbols():
    from .cyclo_field import gaussian_place, gaussian_tame_symbol
    a = gaussian_tame_symbol((0, 1), (11, 0), gaussian_place(11), 4).exponent
    b = gaussian_tame_symbol((0, 1), (3, 0), gaussian_place(3), 4).exponent
    return a == 2 and b == 2, "<i,11>_11 exponent %d, <i,3>_3 exponent %d (order 4)" % (a, b)


def _fx_wild_i_sqrtp():
    from .cyclo_field import BiquadElement, dyadic_symbol_gaussian, q2i_symbol
    bad = []
    for p in _primes(7, 500, lambda q: q % 16 == 7):
        # sqrt p = +-i sqrt(-p) and sqrt(-p) = sqrt(-7) or sqrt(-23) times a 4th power
        via = 11 if p % 32 == 7 else 3
        completed = dyadic_symbol_gaussian((0, 1), (via, 0), 4).exponent
        i = BiquadElement.make(p, (0, 1))
        b = BiquadElement.make(p, (0, 0), (1, 0))
        direct = {q2i_symbol(i.to_dyadic(s), b.to_dyadic(s), 4).exponent for s in (1, -1)}
        if completed != 2 or direct != {2}:
            bad.append(p)
    return not bad, "failing p: %s" % bad if bad else "<i, sqrt p> = -1 at 2 for all p = 7 mod 16 < 500"


def _fx_ell3_lemma():
    from .cyclo_field import sunit_set
    from .genus_engine import build_case, rho_image
    c = build_case("K22/K02:ell3", 7)
    a = rho_image(c, sunit_set("LambdaD_zeta9")).order
    b = rho_image(c, sunit_set("E02_zeta9")).order
    return (a, b) == (81, 27), "p = 7: |rho(Lambda_D)| = %d, |rho(E02)| = %d" % (a, b)


def _fx_5mod8_indices():
    from .genus_engine import index_table_5mod8
    bad = [p for p in _primes(5, 500, lambda q: q % 8 == 5)
           if tuple(index_table_5mod8(p).values()) != (32, 16, 8, 4, 2)]
    return not bad, "failing p: %s" % bad if bad else "32/16/8/4/2 for all p = 5 mod 8 < 500"


def _fx_3mod8_rows():
    from .cyclo_field import sunit_set
    from .genus_engine import build_case, rho_image
    bad = []
    for p in _primes(3, 500, lambda q: q % 8 == 3):
        img = rho_image(build_case("K22/K02", p), sunit_set("E02_zeta8"))
        z, u = img.rows
        ok = z[0] % 2 == 1 and z[0] == z[1] and z[2] == 2
        ok = ok and u[0] % 2 == 1 and (u[0] + u[1]) % 4 == 0 and u[2] == 0
        if not ok or img.order != 8:
            bad.append(p)
    return not bad, "rho(zeta_8) = (+-i, +-i, -1), rho(1+sqrt2) = (+-i, -+i, 1)" if not bad else str(bad)


def _fx_formulas():
    from .genus_engine import chevalley_order, gras_order
    got = (chevalley_order(1, 32, 4, 8), chevalley_order(1, 8, 2, 1), chevalley_order(1, 4, 4, 1),
           gras_order(1, 1, 256, 8, 32))
    return got == (1, 4, 1, 1), "chevalley/gras examples -> %s" % (got,)


def _fx_ramification():
    from .genus_engine import build_case, ramification_product
    want = {("K22/K02", 3): 32, ("K32/K02", 5): 256, ("K21/K01", 5): 32, ("K12/K02", 5): 4,
            ("K21/K11", 7): 8, ("K31/K11", 7): 64, ("K(k+1)0/Kk0:1", 7): 8,
            ("K(k+1)0/Kk0:2", 7): 8}
    bad = {k: ramification_product(build_case(k[0], k[1])) for k in want}
    bad = {k: v for k, v in bad.items() if v != want[k]}
    return not bad, "products of ramification indices" if not bad else str(bad)


def _fx_7mod16_index():
    from .genus_engine import k31_k21_steps
    bad = []
    for p in _primes(7, 500, lambda q: q % 16 == 7):
        s31, s21 = k31_k21_steps(p)
        if (s31.index, s21.index, s31.value, s21.value) != (4, 1, 4, 4):
            bad.append(p)
    return not bad, "K31 index 4, K21 index 1, both Chevalley 4" if not bad else str(bad)


def _fx_classify():
    from .tower_logic import classify, cubic_residue_is_trivial
    got = (str(classify(7, 2)), str(classify(17, 2)), str(classify(7, 3)),
           cubic_residue_is_trivial(7), cubic_residue_is_trivial(13))
    want = ("7 mod 16", "Unsupported(1 mod 8)", "4,7 mod 9, symbol != 1", False, False)
    return got == want, str(got)


def _fx_unit_examples():
    from .quad_field import QuadElement, dyadic_generator, fundamental_unit
    e7 = fundamental_unit(7)
    pi = dyadic_generator(7)
    ok = e7 == QuadElement.of(8, 3, 7) and pi * pi == e7 * 2
    return ok, "eps(7) = %s, pi(7) = %s" % (e7, pi)


def _fx_eta7():
    from .quad_field import dyadic_generator
    from .radical_orders import radical_congruence, relative_unit, trace_valuation
    eta = relative_unit(7)
    tv = trace_valuation(eta, dyadic_generator(7))
    ok = tuple(eta.coeffs) == (13, 8, 5, 3) and tv == 3 and radical_congruence(eta)
    return ok, "eta(7) = %s, trace valuation %d" % (eta, tv)


def _fx_cubic_class_group():
    from .radical_orders import class_group_small
    r = class_group_small(13, 3)
    return r.sylow == [3], "3-Sylow of Cl(Q(13^(1/3))) = %s" % r.sylow


FIXTURES = [
    ("(i,11) and (i,3) quartic symbols = -1", _fx_gauss_symbols),
    ("<i, sqrt p> at Q_2(i) = -1 for p = 7 mod 16", _fx_wild_i_sqrtp),
    ("|rho(Lambda_D)| = 81, |rho(E_0,2)| = 27 for p = 7, ell = 3", _fx_ell3_lemma),
    ("indices 32/16/8/4/2 for p = 5 mod 8", _fx_5mod8_indices),
    ("rho(E_0,2) for p = 3 mod 8", _fx_3mod8_rows),
    ("Chevalley and Gras examples", _fx_formulas),
    ("ramification products", _fx_ramification),
    ("p = 7 mod 16 unit indices over K_1,1", _fx_7mod16_index),
    ("case classification", _fx_classify),
    ("eps and pi for p = 7", _fx_unit_examples),
    ("relative fundamental unit for p = 7", _fx_eta7),
    ("cubic class group p = 13", _fx_cubic_class_group),
]
