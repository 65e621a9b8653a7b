"""Cyclotomic and biquadratic arithmetic for the base fields of the tower.

CycloElement covers Q(zeta_N) for N in {3, 4, 8, 9, 16}; sqrt 2 is always
zeta_8 + zeta_8^-1 and i is zeta_8^2.  BiquadElement covers Q(i, sqrt p).
Gaussian integers are plain (a, b) tuples; they feed the dyadic symbols of
Q(i), which are obtained from tame symbols through the product formula.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath as mp
from sympy import cyclotomic_poly, Symbol, Poly

from .errors import NotIntegralAtPlace, Ramified, UnknownCase
from .exact_arith import build_residue_field, euler_phi, factorint, mult_order, sqrt_mod_prime_power
from .local_symbols import TAME, PlaceDescriptor, ValuedElement, complete_product, tame_symbol

SUPPORTED_CONDUCTORS = (3, 4, 8, 9, 16)


@lru_cache(maxsize=None)
def _phi_coeffs(N):
    x = Symbol("x")
    c = Poly(cyclotomic_poly(N, x), x).all_coeffs()[::-1]
    return tuple(int(v) for v in c)


@dataclass(frozen=True)
class CycloElement:
    conductor: int
    coeffs: tuple

    def __post_init__(self):
        if self.conductor not in SUPPORTED_CONDUCTORS:
            raise UnknownCase("conductor %d not supported" % self.conductor)
        d = euler_phi(self.conductor)
        c = tuple(int(x) for x in self.coeffs) + (0,) * (d - len(self.coeffs))
        if len(c) != d:
            raise ValueError("too many coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_list(cls, N, lst):
        """Reduce an arbitrary coefficient list in zeta_N modulo Phi_N."""
        f = _phi_coeffs(N)
        d = len(f) - 1
        c = list(lst)
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for j in range(d + 1):
                    c[k - d + j] -= t * f[j]
        return cls(N, tuple(c[:d]) if len(c) >= d else tuple(c))

    @classmethod
    def zeta(cls, N, k=1):
        k %= N
        return cls.from_list(N, [0] * k + [1])

    @classmethod
    def integer(cls, N, n):
        return cls(N, (n,))

    def _coerce(self, other):
        if isinstance(other, int):
            return CycloElement.integer(self.conductor, other)
        if other.conductor != self.conductor:
            raise ValueError("conductors differ")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return CycloElement(self.conductor, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return CycloElement.from_list(self.conductor, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not supported")
        r = CycloElement.integer(self.conductor, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def galois(self, k):
        """Image under zeta -> zeta^k."""
        N = self.conductor
        if gcd(k, N) != 1:
            raise ValueError("k must be a unit mod N")
        lst = [0] * N
        for j, a in enumerate(self.coeffs):
            lst[(j * k) % N] += a
        return CycloElement.from_list(N, lst)

    def norm(self):
        N = self.conductor
        r = CycloElement.integer(N, 1)
        for k in range(1, N):
            if gcd(k, N) == 1:
                r = r * self.galois(k)
        if any(r.coeffs[1:]):
            raise ArithmeticError("norm is not rational")
        return r.coeffs[0]

    def is_unit(self):
        return abs(self.norm()) == 1

    def exact_div(self, other):
        """self / other if the quotient is integral, else None."""
        o = self._coerce(other)
        n = o.norm()
        # other^-1 = (prod of the other conjugates) / n
        N = self.conductor
        cof = CycloElement.integer(N, 1)
        for k in range(2, N):
            if gcd(k, N) == 1:
                cof = cof * o.galois(k)
        num = self * cof
        if any(c % n for c in num.coeffs):
            return None
        return CycloElement(N, tuple(c // n for c in num.coeffs))

    def lift(self, M):
        """The same element in Q(zeta_M), N | M."""
        N = self.conductor
        if M % N:
            raise ValueError("%d does not divide %d" % (N, M))
        lst = [0] * M
        for j, a in enumerate(self.coeffs):
            lst[j * (M // N)] += a
        return CycloElement.from_list(M, lst)

    def embed(self, s=1):
        """Complex value under zeta -> exp(2 pi i s / N)."""
        z = mp.expjpi(mp.mpf(2 * s) / self.conductor)
        return mp.fsum(mp.mpc(a) * z ** j for j, a in enumerate(self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for j, a in enumerate(self.coeffs):
            if a:
                terms.append("%d" % a if j == 0 else "%d*z%d^%d" % (a, self.conductor, j))
        return " + ".join(terms) if terms else "0"


def sqrt2():
    z = CycloElement.zeta(8)
    return z + CycloElement.zeta(8, 7)


def gauss_i(N=8):
    return CycloElement.zeta(N, N // 4)


# ---------------------------------------------------------------- splitting and places

@dataclass(frozen=True)
class SplitData:
    count: int
    residue_degree: int


def split_in_cyclotomic(p, N):
    if N % p == 0:
        raise Ramified("%d divides the conductor %d" % (p, N))
    f = mult_order(p, N)
    return SplitData(euler_phi(N) // f, f)


def embedding_representatives(p, N):
    """One exponent s per prime above p: cosets of <p> in (Z/N)^x.

    Preference order 1, -1, then increasing, so that the two primes get the
    conventional embeddings zeta -> zeta and zeta -> zeta^-1 when possible.
    """
    orbit = {pow(p, k, N) for k in range(mult_order(p, N))}
    units = [k for k in range(1, N) if gcd(k, N) == 1]
    pref = [1, N - 1] + [k for k in units if k not in (1, N - 1)]
    reps, seen = [], set()
    for s in pref:
        if s in seen or gcd(s, N) != 1:
            continue
        reps.append(s)
        seen |= {(s * o) % N for o in orbit}
    return reps


def cyclotomic_places(p, N, labels=None):
    """Tame places of Q(zeta_N) above p, in embedding-representative order."""
    F = build_residue_field(p, N)
    reps = embedding_representatives(p, N)
    out = []
    for j, s in enumerate(reps):
        label = labels[j] if labels else "p%d" % (j + 1)
        out.append(PlaceDescriptor(TAME, label, 1, F, s, F.degree, ("cyclo", N)))
    return out


def reduce_at_prime(x, v):
    """Residue of a cyclotomic integer at a tame place (zeta -> zeta_image^s)."""
    F = v.residue_field
    N = F.cyclo_order
    if N % x.conductor:
        raise ValueError("element conductor does not divide the place's conductor")
    y = x.lift(N) if x.conductor != N else x
    g = F.pow(F.zeta_image, v.embedding)
    acc = F.zero()
    gj = F.one()
    for a in y.coeffs:
        if a:
            acc = F.add(acc, F.mul(F.elt(a), gj))
        gj = F.mul(gj, g)
    return acc


def valued_at(x, v):
    """ValuedElement of a cyclotomic integer at a tame place above p (p unramified)."""
    F = v.residue_field
    p = F.p
    val = 0
    while not x.is_zero() and all(c % p == 0 for c in x.coeffs):
        x = CycloElement(x.conductor, tuple(c // p for c in x.coeffs))
        val += 1
    r = reduce_at_prime(x, v)
    if F.is_zero(r):
        raise NotIntegralAtPlace("element has a non-rational factor at %s" % v.label)
    return ValuedElement(val, r)


# ---------------------------------------------------------------- Gaussian integers

def g_mul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def g_conj(z):
    return (z[0], -z[1])


def g_norm(z):
    return z[0] * z[0] + z[1] * z[1]


def g_pow(z, k):
    r = (1, 0)
    for _ in range(k):
        r = g_mul(r, z)
    return r


def g_exact_div(z, w):
    n = g_norm(w)
    t = g_mul(z, g_conj(w))
    if t[0] % n or t[1] % n:
        return None
    return (t[0] // n, t[1] // n)


def g_gcd(z, w):
    while w != (0, 0):
        n = g_norm(w)
        t = g_mul(z, g_conj(w))
        q = ((2 * t[0] + n) // (2 * n), (2 * t[1] + n) // (2 * n))
        qw = g_mul(q, w)
        z, w = w, (z[0] - qw[0], z[1] - qw[1])
    return z


def gaussian_place(q, r=None):
    """Place of Q(i) above an odd prime q.  r: root of -1 mod q for split q."""
    F = build_residue_field(q, 4)
    if q % 4 == 1:
        if r is None or (r * r + 1) % q:
            raise ValueError("need a square root of -1 mod q")
        s = 1 if F.zeta_image == F.elt(r) else 3
        return PlaceDescriptor(TAME, "(%d,i-%d)" % (q, r % q), 1, F, s, 1, ("gauss", q, r % q))
    return PlaceDescriptor(TAME, "(%d)" % q, 1, F, 1, 2, ("gauss", q, None))


def _gaussian_local(z, v):
    _, q, r = v.data
    F = v.residue_field
    val = 0
    if r is None:
        while z != (0, 0) and z[0] % q == 0 and z[1] % q == 0:
            z = (z[0] // q, z[1] // q)
            val += 1
        res = F.add(F.elt(z[0]), F.mul(F.elt(z[1]), F.zeta_image))
    else:
        pi = g_gcd((q, 0), (-r, 1))
        while True:
            w = g_exact_div(z, pi)
            if w is None:
                break
            z, val = w, val + 1
        res = F.elt(z[0] + z[1] * r)
    return ValuedElement(val, res)


def gaussian_odd_places(*zs):
    qs = set()
    for z in zs:
        qs |= {q for q in factorint(g_norm(z)) if q != 2}
    out = []
    for q in sorted(qs):
        if q % 4 == 1:
            r = sqrt_mod_prime_power(-1, q, 1)
            out += [gaussian_place(q, r), gaussian_place(q, q - r)]
        else:
            out.append(gaussian_place(q))
    return out


def gaussian_tame_symbol(a, b, v, n):
    return tame_symbol(_gaussian_local(a, v), _gaussian_local(b, v), v, n)


def dyadic_symbol_gaussian(a, b, n):
    """<a, b> at the place (1+i) of Q(i), n | 4, by the product formula."""
    if a == (0, 0) or b == (0, 0):
        raise ValueError("arguments must be nonzero")
    parts = [gaussian_tame_symbol(a, b, v, n) for v in gaussian_odd_places(a, b)]
    return complete_product(parts, n)


@dataclass(frozen=True)
class DyadicApprox:
    """An element (1+i)^k * u of Q_2(i), u a unit known modulo 2^prec."""
    k: int
    u: tuple
    prec: int = 6


_LAMBDA = (1, 1)
_WILD_PREC = 6   # 1 + 2^6 O lies in U^4 for Q_2(i)


def _small_rep(u):
    m = 2 ** _WILD_PREC
    c = tuple(((x + m // 2) % m) - m // 2 for x in u)
    return c


def q2i_symbol(a, b, n):
    """Hilbert symbol of Q_2(i), n in {2, 4}, via global approximation.

    Units congruent mod 2^6 differ by a fourth power, so each argument is
    replaced by a small Gaussian integer with the same symbol and the value
    is completed from the odd places of Q(i).
    """
    if min(a.prec, b.prec) < _WILD_PREC:
        raise ValueError("need at least 6 bits of precision")
    u1, u2 = _small_rep(a.u), _small_rep(b.u)
    k1, k2 = a.k, b.k
    r = dyadic_symbol_gaussian(u1, u2, n)
    if k1:
        r = r * dyadic_symbol_gaussian(_LAMBDA, u2, n) ** k1
    if k2:
        r = r * dyadic_symbol_gaussian(u1, _LAMBDA, n) ** k2
    if k1 * k2:
        r = r * dyadic_symbol_gaussian(_LAMBDA, (-1, 0), n) ** (k1 * k2)
    return r


def gaussian_to_dyadic(z, prec=40):
    """DyadicApprox of a nonzero Gaussian integer."""
    k = 0
    while (z[0] - z[1]) % 2 == 0:
        z = ((z[0] + z[1]) // 2, (z[1] - z[0]) // 2)
        k += 1
    m = 2 ** prec
    return DyadicApprox(k, (z[0] % m, z[1] % m), prec)


# ---------------------------------------------------------------- Q(i, sqrt p)

def _gr(x):
    return (Fraction(x[0]), Fraction(x[1]))


def _gr_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gr_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _gr_inv(a):
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def _gaussian_int_sqrt(w):
    a, b = w
    m = isqrt(a * a + b * b)
    if m * m != a * a + b * b:
        return None
    c2, d2 = (m + a), (m - a)
    if c2 % 2 or d2 % 2:
        return None
    c, d = isqrt(c2 // 2), isqrt(d2 // 2)
    if c * c != c2 // 2 or d * d != d2 // 2:
        return None
    if 2 * c * d != abs(b):
        return None
    return (c, d if b >= 0 else -d)


def _gr_sqrt(a):
    """Square root of a Gaussian rational, or None."""
    a = _gr(a)
    if a == (0, 0):
        return a
    den = a[0].denominator * a[1].denominator
    z = (int(a[0] * den * den), int(a[1] * den * den))
    r = _gaussian_int_sqrt(z)
    if r is None:
        return None
    return (Fraction(r[0], den), Fraction(r[1], den))


@dataclass(frozen=True)
class BiquadElement:
    """A + B sqrt p with A, B in Q(i) (pairs of Fractions)."""
    p: int
    A: tuple
    B: tuple

    @classmethod
    def make(cls, p, A, B=(0, 0)):
        return cls(p, _gr(A), _gr(B))

    @classmethod
    def from_quad(cls, x):
        return cls.make(x.d, (x.x, 0), (x.y, 0))

    def __mul__(self, o):
        if isinstance(o, int):
            o = BiquadElement.make(self.p, (o, 0))
        A = _gr_add(_gr_mul(self.A, o.A), _gr_mul((self.p, 0), _gr_mul(self.B, o.B)))
        B = _gr_add(_gr_mul(self.A, o.B), _gr_mul(self.B, o.A))
        return BiquadElement(self.p, A, B)

    def __add__(self, o):
        return BiquadElement(self.p, _gr_add(self.A, o.A), _gr_add(self.B, o.B))

    def __neg__(self):
        return BiquadElement(self.p, (-self.A[0], -self.A[1]), (-self.B[0], -self.B[1]))

    def conj_sqrt(self):
        return BiquadElement(self.p, self.A, (-self.B[0], -self.B[1]))

    def relative_norm(self):
        """Norm to Q(i): A^2 - p B^2."""
        t = _gr_mul(self.B, self.B)
        return _gr_add(_gr_mul(self.A, self.A), (-self.p * t[0], -self.p * t[1]))

    def norm(self):
        n = self.relative_norm()
        return n[0] * n[0] + n[1] * n[1]

    def inverse(self):
        n = _gr_inv(self.relative_norm())
        c = self.conj_sqrt()
        return BiquadElement(self.p, _gr_mul(c.A, n), _gr_mul(c.B, n))

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        r = BiquadElement.make(self.p, (1, 0))
        for _ in range(abs(k)):
            r = r * base
        return r

    def __eq__(self, o):
        return isinstance(o, BiquadElement) and (self.p, self.A, self.B) == (o.p, o.A, o.B)

    def __hash__(self):
        return hash((self.p, self.A, self.B))

    def sqrt(self):
        """Exact square root in Q(i, sqrt p), or None."""
        if self.B == (0, 0):
            r = _gr_sqrt(self.A)
            if r is not None:
                return BiquadElement(self.p, r, (0, 0))
            # A = p * D^2 ?
            r = _gr_sqrt((self.A[0] / self.p, self.A[1] / self.p))
            if r is not None:
                return BiquadElement(self.p, (0, 0), r)
            return None
        n0 = _gr_sqrt(self.relative_norm())
        if n0 is None:
            return None
        for sgn in (1, -1):
            c2 = ((self.A[0] + sgn * n0[0]) / 2, (self.A[1] + sgn * n0[1]) / 2)
            C = _gr_sqrt(c2)
            if C is None or C == (0, 0):
                continue
            D = _gr_mul(self.B, _gr_inv((2 * C[0], 2 * C[1])))
            cand = BiquadElement(self.p, C, D)
            if cand * cand == self:
                return cand
        return None

    def to_dyadic(self, sign, prec=40):
        """Image in Q_2(i) under sqrt p -> sign * i * s, s^2 = -p, s = 1 mod 4."""
        p = self.p
        m = 2 ** (prec + 160)
        s = dyadic_sqrt_minus_p(p, prec + 160)
        den = 1
        for x in self.A + self.B:
            den = den * x.denominator // gcd(den, x.denominator)
        A = (int(self.A[0] * den), int(self.A[1] * den))
        B = (int(self.B[0] * den), int(self.B[1] * den))
        img = g_mul(B, (0, sign * s))
        z = ((A[0] + img[0]) % m, (A[1] + img[1]) % m)
        d2 = 0
        while den % 2 == 0:
            den //= 2
            d2 += 1
        inv = pow(den, -1, m)
        z = ((z[0] * inv) % m, (z[1] * inv) % m)
        k = 0
        while (z[0] - z[1]) % 2 == 0:
            if z == (0, 0):
                raise ValueError("element vanishes to working precision")
            z = ((z[0] + z[1]) // 2, (z[1] - z[0]) // 2)
            k += 1
        # 2^-d2 = i^d2 * (1+i)^(-2 d2)
        z = g_mul(z, g_pow((0, 1), d2 % 4))
        mm = 2 ** prec
        return DyadicApprox(k - 2 * d2, (z[0] % mm, z[1] % mm), prec)

    def residue_at_p(self):
        """Image in F_{p^2} at the prime (sqrt p) above p (i -> zeta_image)."""
        F = build_residue_field(self.p, 4)
        a0, a1 = self.A
        for x in (a0, a1):
            if x.denominator % self.p == 0:
                raise NotIntegralAtPlace("denominator divisible by p")
        r = F.add(F.elt(a0.numerator * pow(a0.denominator, -1, self.p)),
                  F.mul(F.elt(a1.numerator * pow(a1.denominator, -1, self.p)), F.zeta_image))
        if F.is_zero(r):
            raise NotIntegralAtPlace("element is not a unit at (sqrt p)")
        return r

    def __str__(self):
        def g(z):
            return "(%s%+si)" % (z[0], z[1])
        return "%s + %s*sqrt(%d)" % (g(self.A), g(self.B), self.p)


@lru_cache(maxsize=None)
def dyadic_sqrt_minus_p(p, prec):
    """The square root of -p in Z_2 that is 1 mod 4 (needs p = 7 mod 8)."""
    if p % 8 != 7:
        raise ValueError("-p is a 2-adic square only for p = 7 mod 8")
    r = 1
    for j in range(3, prec + 2):
        if (r * r + p) % 2 ** (j + 1):
            r += 2 ** (j - 1)
    m = 2 ** prec
    if r % 4 != 1:
        r = -r
    return r % m


# ---------------------------------------------------------------- S-unit sets

@dataclass(frozen=True)
class SUnitSet:
    key: str
    base: str
    labels: tuple
    elements: tuple

    def __iter__(self):
        return iter(zip(self.labels, self.elements))

    def __len__(self):
        return len(self.elements)


def _z8_family():
    z = CycloElement.zeta(8)
    one = CycloElement.integer(8, 1)
    return z, one, one + sqrt2()


def sunit_set(key, p=None):
    """Generator lists of the unit and S-unit groups that enter the index lemmas."""
    from .quad_field import dyadic_generator, fundamental_unit, QuadElement
    if key in ("E02_zeta8", "Lambda02_zeta8", "LambdaK12_zeta8"):
        z, one, u = _z8_family()
        if key == "E02_zeta8":
            return SUnitSet(key, "Q(zeta_8)", ("zeta_8", "1+sqrt2"), (z, u))
        if key == "Lambda02_zeta8":
            return SUnitSet(key, "Q(zeta_8)", ("(1-zeta_8)^2", "zeta_8", "1+sqrt2"),
                            ((one - z) ** 2, z, u))
        return SUnitSet(key, "Q(zeta_8)", ("1-zeta_8", "zeta_8", "1+sqrt2"), (one - z, z, u))
    if key in ("E01_i", "Lambda01_i"):
        i = CycloElement.zeta(4)
        one = CycloElement.integer(4, 1)
        if key == "E01_i":
            return SUnitSet(key, "Q(i)", ("i",), (i,))
        return SUnitSet(key, "Q(i)", ("(1-i)^2", "i"), ((one - i) ** 2, i))
    if key in ("E02_zeta9", "LambdaD_zeta9"):
        z = CycloElement.zeta(9)
        one = CycloElement.integer(9, 1)
        m1 = CycloElement.integer(9, -1)
        if key == "LambdaD_zeta9":
            return SUnitSet(key, "Q(zeta_9)",
                            ("-1", "zeta_9", "1-zeta_9", "1-zeta_9^2", "1-zeta_9^4"),
                            (m1, z, one - z, one - z ** 2, one - z ** 4))
        c2 = (one - z ** 2).exact_div(one - z)
        c4 = (one - z ** 4).exact_div(one - z)
        return SUnitSet(key, "Q(zeta_9)",
                        ("-1", "zeta_9", "(1-zeta_9^2)/(1-zeta_9)", "(1-zeta_9^4)/(1-zeta_9)"),
                        (m1, z, c2, c4))
    if key == "E01_zeta3":
        z = CycloElement.zeta(3)
        return SUnitSet(key, "Q(zeta_3)", ("-1", "zeta_3"), (CycloElement.integer(3, -1), z))
    if p is None:
        raise UnknownCase("case %s needs p" % key)
    if key == "E10":
        eps = fundamental_unit(p)
        return SUnitSet(key, "Q(sqrt %d)" % p, ("-1", "eps"), (QuadElement.rational(-1, p), eps))
    if key == "LambdaD_K10":
        pi = dyadic_generator(p)
        eps = fundamental_unit(p)
        return SUnitSet(key, "Q(sqrt %d)" % p, ("-1", "pi", "eps"),
                        (QuadElement.rational(-1, p), pi, eps))
    if key in ("E11", "LambdaD1"):
        pi = BiquadElement.from_quad(dyadic_generator(p))
        w = pi * BiquadElement.make(p, (1, 1)).inverse()
        i = BiquadElement.make(p, (0, 1))
        if key == "E11":
            return SUnitSet(key, "Q(i, sqrt %d)" % p, ("pi/(1+i)", "i"), (w, i))
        xi, k = dyadic_odd_generator(p)
        return SUnitSet(key, "Q(i, sqrt %d)" % p,
                        ("pi/(1+i)", "i", "xi (q_{1,1}^%d)" % k), (w, i, xi))
    raise UnknownCase("unknown S-unit case %r" % key)


def imaginary_dyadic_generator(p):
    """gamma = (x + y sqrt(-p))/2 generating r^h, r a prime above 2 in Q(sqrt -p).

    h = h(-p); the sign of y selects the prime r with gamma = 0 mod r under
    sqrt(-p) -> s (s the 2-adic root that is 1 mod 4).
    """
    from .quad_field import class_number
    h = class_number(-p)
    target = 4 * 2 ** h
    y = 1
    while p * y * y <= target:
        x2 = target - p * y * y
        x = isqrt(x2)
        if x * x == x2:
            s = dyadic_sqrt_minus_p(p, 16)
            if (x + y * s) % 4:
                y = -y
            return h, x, y
        y += 1
    raise ArithmeticError("no element of norm 2^h found")


def dyadic_odd_generator(p, max_k=61):
    """xi in K_{1,1} generating an odd power of a dyadic prime q_{1,1}.

    gamma generates q^(2h); xi^2 = gamma^k * u for a unit u mod squares and
    the least odd k for which a square root exists.
    """
    h, x, y = imaginary_dyadic_generator(p)
    gamma = BiquadElement.make(p, (Fraction(x, 2), 0), (0, Fraction(y, 2)))
    from .quad_field import dyadic_generator
    pi = BiquadElement.from_quad(dyadic_generator(p))
    w = pi * BiquadElement.make(p, (1, 1)).inverse()
    i = BiquadElement.make(p, (0, 1))
    one = BiquadElement.make(p, (1, 0))
    classes = [one, i, w, i * w]
    g = gamma
    for k in range(1, max_k + 1, 2):
        for u in classes:
            r = (g * u).sqrt()
            if r is not None:
                return r, h * k
        g = g * gamma * gamma
    raise ArithmeticError("no odd generator found up to exponent %d" % max_k)
