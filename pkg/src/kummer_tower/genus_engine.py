"""Norm-index computations for cyclic Kummer steps K/F of the tower.

An ExtensionCase lists the ramified places of F (wild places last), the
symbol order n and the Kummer generator b with K = F(b^(1/n)).  rho maps
an S-unit x to its vector of Hilbert symbols <x, b>_v; the size of its image
is the norm index that enters the ambiguous class number formulas.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from .cyclo_field import (BiquadElement, CycloElement, cyclotomic_places, q2i_symbol, sunit_set,
                          valued_at)
from .errors import NonIntegral, TwoWildPlaces, UnsupportedCase
from .exact_arith import RootOfUnity, build_residue_field, euler_phi, mult_order
from .local_symbols import (REAL, TAME, WILD, PlaceDescriptor, ValuedElement, complete_product,
                            real_symbol, tame_symbol)
from .quad_field import QuadElement


@dataclass(frozen=True)
class ExtensionCase:
    ell: int
    p: int
    key: str
    base: tuple            # (n, m) of F = K_{n,m}
    top: tuple             # (n, m) of K
    n: int                 # symbol order
    b: object              # Kummer generator, an element of F
    places: tuple          # PlaceDescriptors, wild places last
    base_label: str = ""
    b_label: str = ""

    @property
    def degree(self):
        return _field_degree(self.top, self.ell) // _field_degree(self.base, self.ell)

    def wild_places(self):
        return [v for v in self.places if v.kind == WILD]


@dataclass(frozen=True)
class RhoImage:
    n: int
    labels: tuple          # generator labels
    places: tuple          # place labels
    rows: tuple            # exponent vectors mod n
    order: int

    def row_sums_vanish(self):
        return all(sum(r) % self.n == 0 for r in self.rows)

    def as_roots(self):
        return [[RootOfUnity(self.n, e) for e in r] for r in self.rows]


def _field_degree(nm, ell):
    n, m = nm
    return ell ** n * euler_phi(2 * ell ** m if ell == 2 else ell ** m)


# ---------------------------------------------------------------- symbols at one place

def symbol_at(x, b, v, n):
    """<x, b>_v for the place kinds used by the cases below (exponent form)."""
    tag = v.data[0] if v.data else None
    if v.kind == REAL:
        return real_symbol(_real_sign(x, v), _real_sign(b, v)) if n == 2 else RootOfUnity(n, 0)
    if v.kind == TAME:
        return tame_symbol(_local(x, v), _local(b, v), v, n)
    if v.kind == WILD and tag == "K11q":
        sgn = v.data[1]
        return q2i_symbol(_biquad(x, v).to_dyadic(sgn), _biquad(b, v).to_dyadic(sgn), n)
    if v.kind == WILD and tag == "gauss2":
        from .cyclo_field import gaussian_to_dyadic
        return q2i_symbol(gaussian_to_dyadic(_gauss(x)), gaussian_to_dyadic(_gauss(b)), n)
    raise TwoWildPlaces("no direct evaluation at %s" % v.label)


def _gauss(x):
    if isinstance(x, int):
        return (x, 0)
    if x.conductor != 4:
        raise ValueError("expected an element of Q(i)")
    return (x.coeffs[0], x.coeffs[1])


def _biquad(x, v):
    p = v.data[2]
    if isinstance(x, int):
        return BiquadElement.make(p, (x, 0))
    if isinstance(x, QuadElement):
        return BiquadElement.from_quad(x)
    return x


def _real_sign(x, v):
    """Sign at a real place of K_{k,0}.

    data = ("Kn0real", k, flip): flip=True is the place with theta_k < 0.
    On Q(sqrt p) it acts as sqrt p -> -sqrt p only when k = 1 and flip.
    """
    k, flip = v.data[1], v.data[2]
    if isinstance(x, int):
        return 1 if x > 0 else -1
    if isinstance(x, str) and x == "theta":
        return -1 if flip else 1
    if isinstance(x, QuadElement):
        return x.sign_conj() if (k == 1 and flip) else x.sign()
    raise TypeError("unsupported element at a real place")


def _local(x, v):
    tag = v.data[0]
    F = v.residue_field
    if tag == "cyclo":
        N = v.data[1]
        if isinstance(x, int):
            x = CycloElement.integer(N, x)
        if x.conductor != N:
            x = x.lift(N)
        return valued_at(x, v)
    if tag == "Kn0p":
        # residue at (theta_k): x in Q(sqrt p) is read mod sqrt p
        if isinstance(x, str) and x == "theta":
            return ValuedElement(1, F.one())
        if isinstance(x, int):
            x = QuadElement.rational(x, v.data[2])
        a = x.x
        r = (a.numerator * pow(a.denominator, -1, F.p)) % F.p
        if r == 0:
            raise ValueError("element not a unit at (theta)")
        return ValuedElement(0, F.elt(r))
    if tag == "K11p":
        y = _biquad(x, v)
        p = v.data[2]
        k = 0
        # y = A + B sqrt p is divisible by sqrt p iff A = 0 mod p
        while all(c.numerator % p == 0 for c in y.A):
            if y.B == (0, 0) and y.A == (0, 0):
                raise ValueError("zero has no valuation")
            y = BiquadElement(p, y.B, (y.A[0] / p, y.A[1] / p))
            k += 1
        return ValuedElement(k, y.residue_at_p())
    raise ValueError("unknown tame place tag %r" % tag)


def rho_row(x, case, wild="product"):
    """Symbol exponents of x at the places of the case.

    wild="product": a single wild place is filled in by the product formula.
    wild="direct": every place is evaluated directly (needs a direct method).
    """
    n = case.n
    vals = []
    wilds = case.wild_places()
    for v in case.places:
        if v.kind == WILD and wild == "product":
            continue
        vals.append(symbol_at(x, case.b, v, n))
    if wild == "product":
        if len(wilds) > 1:
            raise TwoWildPlaces("%d wild places in %s" % (len(wilds), case.key))
        if wilds:
            vals.append(complete_product(vals, n))
    return [r.exponent % n for r in vals]


def rho_image(case, gens, wild="product"):
    labels, elems = [], []
    for lab, x in gens:
        labels.append(lab)
        elems.append(x)
    rows = tuple(tuple(rho_row(x, case, wild)) for x in elems)
    return _image(case, labels, rows)


def _image(case, labels, rows):
    from .lattice import subgroup_order_mod
    r = len(case.places)
    order = subgroup_order_mod([list(x) for x in rows], case.n, r) if rows else 1
    img = RhoImage(case.n, tuple(labels), tuple(v.label for v in case.places), rows, order)
    if not img.row_sums_vanish():
        raise ArithmeticError("product formula violated in %s" % case.key)
    return img


def rho_image_two_wild(case, gens, ambiguous=()):
    """Image order for a case with two wild places, two ways.

    direct: both wild symbols from global approximation in Q_2(i).
    branches: for the generators listed in `ambiguous`, the first wild value
    ranges over all u with u^2 equal to the directly computed squared symbol
    and the second is fixed by the product formula.  Returns
    (direct RhoImage, set of branch orders).
    """
    direct = rho_image(case, gens, wild="direct")
    n = case.n
    wild_idx = [i for i, v in enumerate(case.places) if v.kind == WILD]
    if len(wild_idx) != 2 or n % 2:
        raise UnsupportedCase("branch analysis needs two wild places and even n")
    i1, i2 = wild_idx
    options = []
    for lab, row in zip(direct.labels, direct.rows):
        if lab not in ambiguous:
            options.append([row])
            continue
        sq = (2 * row[i1]) % n
        tame_sum = sum(e for j, e in enumerate(row) if j not in wild_idx)
        alts = []
        for u in range(n):
            if (2 * u) % n == sq:
                r = list(row)
                r[i1] = u
                r[i2] = (-tame_sum - u) % n
                alts.append(tuple(r))
        options.append(alts)
    orders = set()
    for combo in product(*options):
        orders.add(_image(case, direct.labels, combo).order)
    return direct, orders


def swap_embeddings(case):
    """Same case with every tame cyclotomic place using the conjugate embedding."""
    places = []
    for v in case.places:
        if v.kind == TAME and v.data and v.data[0] == "cyclo":
            N = v.data[1]
            places.append(replace(v, embedding=(N - v.embedding) % N))
        else:
            places.append(v)
    return replace(case, places=tuple(places))


# ---------------------------------------------------------------- ramification

def _e2(n, m, p):
    """Ramification index of 2 in K_{n,m} (ell = 2)."""
    if p == 2:
        return 2 ** (n + m)
    if n == 0:
        return 2 ** m
    c8, c16 = p % 8, p % 16
    if c8 == 3:
        return 2 ** n if m == 0 else 2 ** (n + m - 1)
    if c8 == 5:
        return 2 ** m if n == 0 else 2 ** (n - 1 + m)
    if c16 == 7:
        if m <= 1:
            return 2 ** n
        if n == 1:
            return 2 ** m
    raise UnsupportedCase("ramification of 2 in K_%d,%d for p = %d" % (n, m, p))


def _g2(n, m, p):
    if p % 16 == 7 and ((n >= 1 and m == 1) or (n == 1 and m >= 1)):
        return 2
    if p % 8 in (3, 5) or p == 2 or p % 16 == 7:
        return 1
    raise UnsupportedCase("splitting of 2 for p = %d" % p)


def _e3(n, m, p):
    if n == 0:
        return euler_phi(3 ** m) if m else 1
    if p == 3 or p % 9 in (2, 5, 4, 7):
        if p % 9 in (4, 7) and n > max(m, 1):
            raise UnsupportedCase("ramification of 3 in K_%d,%d for p = %d" % (n, m, p))
        return 3 ** n * (euler_phi(3 ** m) if m else 1)
    raise UnsupportedCase("ramification of 3 for p = %d" % p)


def ramification_index(q, nm, p, ell):
    n, m = nm
    if q == ell:
        return _e2(n, m, p) if ell == 2 else _e3(n, m, p)
    if q == p:
        return ell ** n
    return 1


def place_count(q, nm, p, ell):
    n, m = nm
    if q == ell:
        return _g2(n, m, p) if ell == 2 else 1
    if q == p:
        if m == 0:
            return 1
        return euler_phi(_cyclo_conductor(m, ell)) // mult_order(p, _cyclo_conductor(m, ell))
    raise ValueError("only ell and p ramify")


def _cyclo_conductor(m, ell):
    return 2 ** (m + 1) if ell == 2 else 3 ** m


def real_places(nm, ell):
    n, m = nm
    if m >= 1:
        return 0
    if ell == 2:
        return 2 if n >= 1 else 1
    return 1


def ramification_product(case):
    """Product of the ramification indices over all places of the base."""
    p, ell = case.p, case.ell
    F, K = case.base, case.top
    deg = case.degree
    total = 1
    primes = [ell] if p == ell else [ell, p]
    for q in primes:
        eK = ramification_index(q, K, p, ell)
        eF = ramification_index(q, F, p, ell)
        if eK % eF:
            raise ArithmeticError("ramification indices not multiplicative")
        total *= (eK // eF) ** place_count(q, F, p, ell)
    if ell == 2:
        total *= 2 ** (real_places(F, ell) - real_places(K, ell) // deg)
    return total


# ---------------------------------------------------------------- class number formulas

def chevalley_order(h_base, prod_e, degree, unit_index):
    num = h_base * prod_e
    den = degree * unit_index
    if num % den:
        raise NonIntegral("Chevalley: %d*%d / (%d*%d) is not an integer" % (h_base, prod_e, degree, unit_index))
    return num // den


def gras_order(h_base, norm_C_order, prod_e, degree, lambda_index):
    if h_base % norm_C_order:
        raise NonIntegral("|N C| does not divide |Cl_F|")
    num = (h_base // norm_C_order) * prod_e
    den = degree * lambda_index
    if num % den:
        raise NonIntegral("Gras: %d / %d is not an integer" % (num, den))
    return num // den


# ---------------------------------------------------------------- the cases

def _wild(label, data=()):
    return PlaceDescriptor(WILD, label, 1, None, 1, 1, data)


def _cyclo_case(key, p, ell, base, top, N, n, wild_label, labels=None):
    tame = cyclotomic_places(p, N, labels)
    places = tuple(tame) + (_wild(wild_label),)
    return ExtensionCase(ell, p, key, base, top, n, p, places, "Q(zeta_%d)" % N, str(p))


def _Kn0_case(key, p, k, n=2):
    """K_{k+1,0}/K_{k,0}: b = theta_k, places infinity_k, (theta_k), q_{k,0}."""
    F = build_residue_field(p, 2)
    places = (PlaceDescriptor(REAL, "inf_%d" % k, 1, None, 1, 1, ("Kn0real", k, True)),
              PlaceDescriptor(TAME, "(theta_%d)" % k, 1, F, 1, 1, ("Kn0p", k, p)),
              _wild("q_%d,0" % k))
    return ExtensionCase(2, p, key, (k, 0), (k + 1, 0), n, "theta", places,
                         "K_%d,0" % k, "p^(1/2^%d)" % k)


def _Kn1_over_Kn0_case(key, p, k):
    """K_{k,1}/K_{k,0} = adjoining sqrt(-1): only the two real places ramify."""
    places = (PlaceDescriptor(REAL, "inf_%d" % k, 1, None, 1, 1, ("Kn0real", k, True)),
              PlaceDescriptor(REAL, "inf'_%d" % k, 1, None, 1, 1, ("Kn0real", k, False)))
    return ExtensionCase(2, p, key, (k, 0), (k, 1), 2, -1, places, "K_%d,0" % k, "-1")


def _K11_case(key, p, n, top, b, b_label, include_p=True):
    F = build_residue_field(p, 4)
    places = []
    if include_p:
        places.append(PlaceDescriptor(TAME, "p_1,1", 1, F, 1, 2, ("K11p", None, p)))
    places.append(_wild("q_1,1", ("K11q", 1, p)))
    places.append(_wild("q'_1,1", ("K11q", -1, p)))
    return ExtensionCase(2, p, key, (1, 1), top, n, b, tuple(places), "K_1,1", b_label)


def build_case(key, p):
    """ExtensionCase for one of the named Kummer steps."""
    if key == "K22/K02":
        return _cyclo_case(key, p, 2, (0, 2), (2, 2), 8, 4, "q_0,2", ["p1", "p2"])
    if key == "K32/K02":
        return _cyclo_case(key, p, 2, (0, 2), (3, 2), 8, 8, "q_0,2", ["P1", "P2"])
    if key == "K21/K01":
        c = _cyclo_case(key, p, 2, (0, 1), (2, 1), 4, 4, "q_0,1", ["p1", "p2"])
        return replace(c, places=c.places[:-1] + (_wild("q_0,1", ("gauss2",)),))
    if key == "K11/K01":
        c = _cyclo_case(key, p, 2, (0, 1), (1, 1), 4, 2, "q_0,1", ["p"])
        return replace(c, places=c.places[:-1] + (_wild("q_0,1", ("gauss2",)),))
    if key == "K12/K02":
        return _cyclo_case(key, p, 2, (0, 2), (1, 2), 8, 2, "q_0,2", ["p1", "p2"])
    if key.startswith("K(k+1)0/Kk0:"):
        k = int(key.split(":")[1])
        return _Kn0_case(key, p, k)
    if key.startswith("Kk1/Kk0:"):
        k = int(key.split(":")[1])
        return _Kn1_over_Kn0_case(key, p, k)
    if key == "K21/K11":
        return _K11_case(key, p, 2, (2, 1), BiquadElement.make(p, (0, 0), (1, 0)), "sqrt p")
    if key == "K31/K11":
        return _K11_case(key, p, 4, (3, 1), BiquadElement.make(p, (0, 0), (1, 0)), "sqrt p")
    if key == "K12/K11":
        return _K11_case(key, p, 2, (1, 2), BiquadElement.make(p, (0, -1)), "-i")
    if key == "K22/K02:ell3":
        return _cyclo_case(key, p, 3, (0, 2), (2, 2), 9, 9, "q_0,2", ["p1", "p2"])
    if key == "K12/K02:ell3":
        if p == 3:
            places = (_wild("q_0,2"),)
            return ExtensionCase(3, 3, key, (0, 2), (1, 2), 3, 3, places, "Q(zeta_9)", "3")
        return _cyclo_case(key, p, 3, (0, 2), (1, 2), 9, 3, "q_0,2", None)
    raise UnsupportedCase("unknown extension case %r" % key)


# ---------------------------------------------------------------- generator sets for the cases

def index_table_5mod8(p):
    """The five norm indices for p = 5 mod 8, keyed by description."""
    out = {}
    c = build_case("K32/K02", p)
    out["Lambda02/K32"] = rho_image(c, sunit_set("Lambda02_zeta8")).order
    out["E02/K32"] = rho_image(c, sunit_set("E02_zeta8")).order
    c = build_case("K21/K01", p)
    out["Lambda01/K21"] = rho_image(c, sunit_set("Lambda01_i")).order
    out["E01/K21"] = rho_image(c, sunit_set("E01_i")).order
    c = build_case("K12/K02", p)
    out["E02/K12"] = rho_image(c, sunit_set("E02_zeta8")).order
    return out


def derived_square_image(case4, img4, case2):
    """Image for exponent n/2 obtained from an order-n image: each symbol squared."""
    if case4.n != 2 * case2.n or case4.places != case2.places:
        raise UnsupportedCase("cases do not differ by squaring the symbol")
    rows = tuple(tuple(e % case2.n for e in r) for r in img4.rows)
    return _image(case2, img4.labels, rows)


def symbol_obstruction(p, ell):
    """<zeta_ell, p> at a place above p of Q(zeta_ell), as a RootOfUnity.

    Nontrivial exactly when zeta^((q-1)/ell) != 1 with q the residue field size.
    """
    from .cyclo_field import CycloElement
    N = 4 if ell == 2 else ell
    v = cyclotomic_places(p, N)[0]
    z = CycloElement.zeta(N, N // ell)
    return tame_symbol(valued_at(z, v), valued_at(CycloElement.integer(N, p), v), v, ell)


def dyadic_class_certificate(p, k=1):
    """For p = 7 mod 8: True when rho(pi) is outside rho(E_{k,0}) for K_{k+1,0}/K_{k,0}.

    Then pi*w is not a norm for any unit w, so pi*w is never a square there
    and the ideal above 2 of K_{k,0} with square (pi) is not principal.
    """
    from .cyclo_field import sunit_set
    case = build_case("K(k+1)0/Kk0:%d" % k, p)
    units = sunit_set("E10", p)
    pi = dict(sunit_set("LambdaD_K10", p))["pi"]
    base = rho_image(case, units).order
    both = rho_image(case, list(units) + [("pi", pi)]).order
    return both > base


# ---------------------------------------------------------------- per-prime reports

@dataclass
class StepReport:
    key: str
    formula: str        # "chevalley" or "gras"
    prod_e: int
    degree: int
    index: int
    value: int
    image: RhoImage = None


def chevalley_step(case, gens, h_base=1, wild="product"):
    img = rho_image(case, gens, wild)
    e = ramification_product(case)
    val = chevalley_order(h_base, e, case.degree, img.order)
    return StepReport(case.key, "chevalley", e, case.degree, img.order, val, img)


def gras_step(case, gens, h_base=1, norm_C=1, wild="product"):
    img = rho_image(case, gens, wild)
    e = ramification_product(case)
    val = gras_order(h_base, norm_C, e, case.degree, img.order)
    return StepReport(case.key, "gras", e, case.degree, img.order, val, img)


def k31_k21_steps(p):
    """The two wild-place steps over K_{1,1} for p = 7 mod 16.

    K31: direct wild symbols; the order is also checked over all sign branches
    of the fourth-root ambiguity of pi/(1+i).  K21: the K31 image mod 2.
    """
    from .cyclo_field import sunit_set
    c31 = build_case("K31/K11", p)
    gens = sunit_set("E11", p)
    direct, orders = rho_image_two_wild(c31, gens, ambiguous=("pi/(1+i)",))
    if orders != {direct.order}:
        raise ArithmeticError("K31 index depends on the wild branch: %s" % sorted(orders))
    c21 = build_case("K21/K11", p)
    img21 = derived_square_image(c31, direct, c21)
    check = rho_image(c21, gens, wild="direct")
    if check.rows != img21.rows:
        raise ArithmeticError("direct K21 symbols disagree with the squared K31 symbols")
    out = []
    for c, img in ((c31, direct), (c21, img21)):
        e = ramification_product(c)
        out.append(StepReport(c.key, "chevalley", e, c.degree, img.order,
                              chevalley_order(1, e, c.degree, img.order), img))
    return out
