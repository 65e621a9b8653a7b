"""Arithmetic in real (and imaginary) quadratic fields Q(sqrt d).

Elements are stored with doubled integer coordinates: (X + Y sqrt d) / 2.
The real embedding is the one with sqrt d > 0; the other embedding is
conjugation.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from sympy import factorint as _factorint

from .errors import (BoundExceeded, EvenNorm, NoSolution, NotCoprime, NotSquarefree,
                     PreconditionViolated)
from .exact_arith import is_prime, legendre, sqrt_mod_prime_power, valuation


def is_squarefree(d):
    if d in (0, 1):
        return d == 1
    return all(e == 1 for e in _factorint(abs(d)).values())


@dataclass(frozen=True)
class QuadElement:
    X: int
    Y: int
    d: int

    # construction helpers
    @classmethod
    def of(cls, x, y, d):
        x, y = Fraction(x), Fraction(y)
        X, Y = 2 * x, 2 * y
        if X.denominator != 1 or Y.denominator != 1:
            raise ValueError("coordinates must be integers or half-integers")
        return cls(int(X), int(Y), d)

    @classmethod
    def rational(cls, n, d):
        return cls.of(n, 0, d)

    @property
    def x(self):
        return Fraction(self.X, 2)

    @property
    def y(self):
        return Fraction(self.Y, 2)

    def is_integral(self):
        if self.d % 4 == 1:
            return (self.X - self.Y) % 2 == 0
        return self.X % 2 == 0 and self.Y % 2 == 0

    def _check(self, other):
        if isinstance(other, int):
            return QuadElement(2 * other, 0, self.d)
        if other.d != self.d:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuadElement(self.X + other.X, self.Y + other.Y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.X, -self.Y, self.d)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        # ((X1 + Y1 s)(X2 + Y2 s))/4 = ((X1X2 + d Y1Y2) + (X1Y2 + X2Y1) s)/4
        X = self.X * other.X + self.d * self.Y * other.Y
        Y = self.X * other.Y + self.Y * other.X
        if X % 2 or Y % 2:
            # only possible for non-integral inputs
            return _from_fraction(Fraction(X, 4), Fraction(Y, 4), self.d)
        return QuadElement(X // 2, Y // 2, self.d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElement(2, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self):
        return QuadElement(self.X, -self.Y, self.d)

    def norm(self):
        n = Fraction(self.X * self.X - self.d * self.Y * self.Y, 4)
        return int(n) if n.denominator == 1 else n

    def trace(self):
        return self.X

    def is_zero(self):
        return self.X == 0 and self.Y == 0

    def inverse(self):
        n = Fraction(self.X * self.X - self.d * self.Y * self.Y, 4)
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return _from_fraction(c.x / n, c.y / n, self.d)

    def exact_div(self, other):
        """self / other if the quotient is integral, else None."""
        other = self._check(other)
        q = self * other.inverse()
        return q if q.is_integral() else None

    def divides(self, other):
        return self._check(other).exact_div(self) is not None

    def sign(self):
        """Sign under sqrt d > 0 (d > 0 required)."""
        return _sign_of(self.X, self.Y, self.d)

    def sign_conj(self):
        return _sign_of(self.X, -self.Y, self.d)

    def is_totally_positive(self):
        return self.sign() > 0 and self.sign_conj() > 0

    def coeffs(self):
        return (self.x, self.y)

    def __str__(self):
        x, y = self.x, self.y
        return "%s + %s*sqrt(%d)" % (x, y, self.d)


def _from_fraction(x, y, d):
    X, Y = 2 * Fraction(x), 2 * Fraction(y)
    if X.denominator != 1 or Y.denominator != 1:
        raise ValueError("result leaves the half-integer lattice: %s, %s" % (x, y))
    return QuadElement(int(X), int(Y), d)


def _sign_of(X, Y, d):
    if d <= 0:
        raise ValueError("sign needs a real field")
    if X == 0 and Y == 0:
        return 0
    if X >= 0 and Y >= 0:
        return 1
    if X <= 0 and Y <= 0:
        return -1
    # opposite signs: compare X^2 with d Y^2 (never equal, d not a square)
    if X * X > d * Y * Y:
        return 1 if X > 0 else -1
    return 1 if Y > 0 else -1


def congruent_mod(a, b, m):
    """a == b mod m O for a rational integer m."""
    diff = a - b
    if diff.d % 4 == 1:
        # integral basis {1, (1+s)/2}: coordinates u = (X-Y)/2, v = Y
        u, v = (diff.X - diff.Y) // 2, diff.Y
        return (diff.X - diff.Y) % 2 == 0 and u % m == 0 and v % m == 0
    return diff.X % (2 * m) == 0 and diff.Y % (2 * m) == 0


# ---------------------------------------------------------------- continued fractions

def _cf_quadratic(P, Q, D):
    """Partial quotients of (P + sqrt D)/Q, requiring Q | D - P^2."""
    r = isqrt(D)
    while True:
        a = (P + r) // Q
        yield a
        P = a * Q - P
        Q = (D - P * P) // Q


def fundamental_unit(d, max_terms=10**6):
    """Fundamental unit eps > 1 of the maximal order of Q(sqrt d).

    Runs through the convergents p/q of omega (sqrt d or (1+sqrt d)/2); the
    first convergent whose element has norm +-1 is the fundamental unit.
    """
    if d <= 1 or not is_squarefree(d):
        raise NotSquarefree("%d is not a squarefree integer > 1" % d)
    if d % 4 == 1:
        gen = _cf_quadratic(1, 2, d)
    else:
        gen = _cf_quadratic(0, 1, d)
    p0, p1 = 1, next(gen)
    q0, q1 = 0, 1
    for _ in range(max_terms):
        if d % 4 == 1:
            # p - q*omega_bar with omega_bar = (1 - sqrt d)/2
            eps = QuadElement(2 * p1 - q1, q1, d)
        else:
            eps = QuadElement(2 * p1, 2 * q1, d)
        if eps.norm() in (1, -1) and eps.sign() > 0:
            return eps
        a = next(gen)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
    raise BoundExceeded("continued fraction did not reach a unit")


def convergent_elements(d, terms):
    """Elements p + q sqrt d for the first convergents of sqrt d (d != 1 mod 4 style)."""
    gen = _cf_quadratic(0, 1, d)
    p0, p1 = 1, next(gen)
    q0, q1 = 0, 1
    out = []
    for _ in range(terms):
        out.append(QuadElement(2 * p1, 2 * q1, d))
        a = next(gen)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
    return out


def unit_power_index(u, eps, max_k=10**6):
    """k with u = +-eps^k, by repeated exact division (u a unit)."""
    k = 0
    cur = u
    one = QuadElement(2, 0, u.d)
    while k < max_k:
        if cur == one or cur == -one:
            return k
        if cur.sign() * 1 != 0 and abs_gt_one(cur):
            cur = cur * eps.inverse()
            k += 1
        else:
            cur = cur * eps
            k -= 1
        if abs(k) > max_k:
            break
    raise BoundExceeded("unit is not a power of eps within bound")


def abs_gt_one(u):
    """|u| > 1 under the real embedding, decided exactly."""
    s = u.sign()
    v = u if s > 0 else -u
    return (v - 1).sign() > 0


def dyadic_generator(p, eps=None):
    """Totally positive pi = u + v sqrt p with N(pi) = 2 and pi^2/2 = eps (p = 7 mod 8).

    From eps = x + y sqrt p with N(eps) = 1: u^2 = x + 1 and p v^2 = x - 1.
    """
    if not is_prime(p) or p % 8 != 7:
        raise NoSolution("dyadic generator needs a prime p = 7 mod 8")
    if eps is None:
        eps = fundamental_unit(p)
    x, y = eps.x, eps.y
    if x.denominator != 1 or eps.norm() != 1:
        raise NoSolution("unexpected fundamental unit shape")
    x = int(x)
    u2, pv2 = x + 1, x - 1
    u = isqrt(u2)
    if u * u != u2 or pv2 % p:
        raise NoSolution("2 eps is not a square in Z[sqrt p]")
    v = isqrt(pv2 // p)
    if v * v * p != pv2:
        raise NoSolution("2 eps is not a square in Z[sqrt p]")
    pi = QuadElement(2 * u, 2 * v, p)
    if pi.norm() != 2 or pi * pi != eps * 2:
        raise NoSolution("normalisation failed")
    return pi


def dyadic_generator_search(p, eps=None, cap=10**6):
    """Same result via the search u^2 = 2 + p v^2 over odd v, then eps-adjustment."""
    if not is_prime(p) or p % 8 != 7:
        raise NoSolution("dyadic generator needs a prime p = 7 mod 8")
    if eps is None:
        eps = fundamental_unit(p)
    for v in range(1, cap + 1, 2):
        u2 = 2 + p * v * v
        u = isqrt(u2)
        if u * u == u2:
            pi0 = QuadElement(2 * u, 2 * v, p)
            break
    else:
        raise NoSolution("no solution with v <= %d" % cap)
    # pi0^2 / 2 = +- eps^k with k odd
    w = (pi0 * pi0).exact_div(QuadElement(4, 0, p))
    k = unit_power_index(w, eps)
    if k % 2 == 0:
        raise NoSolution("pi0^2/2 is an even power of eps")
    pi = pi0 * eps ** ((1 - k) // 2)
    if pi.sign() < 0:
        pi = -pi
    if pi * pi != eps * 2:
        raise NoSolution("normalisation failed")
    return pi


# ---------------------------------------------------------------- class numbers

def discriminant_of(d):
    """Fundamental discriminant for a squarefree seed or a fundamental discriminant."""
    if is_squarefree(d) and d != 1:
        return d if d % 4 == 1 else 4 * d
    if d % 4 == 0:
        m = d // 4
        if m % 4 in (2, 3) and is_squarefree(m):
            return d
    raise NotSquarefree("%d is neither squarefree nor a fundamental discriminant" % d)


def reduced_forms_negative(D):
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and c == a:
                continue
            out.append((a, b, c))
        a += 1
    return out


def _rho_indefinite(f, D, r):
    a, b, c = f
    m = 2 * abs(c)
    b2 = r - ((r + b) % m)
    return (c, b2, (b2 * b2 - D) // (4 * c))


def reduced_forms_positive(D):
    r = isqrt(D)
    out = []
    for b in range(1, r + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4      # negative
        n = -ac
        for a in range(1, n + 1):
            if n % a:
                continue
            # reduced: sqrt D - b < 2|a| < sqrt D + b
            if (2 * a + b) ** 2 <= D:
                continue
            if 2 * a - b > 0 and (2 * a - b) ** 2 >= D:
                continue
            for s in (1, -1):
                out.append((s * a, b, ac // (s * a)))
    return out


def narrow_class_number_positive(D):
    r = isqrt(D)
    forms = set(reduced_forms_positive(D))
    seen = set()
    cycles = 0
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho_indefinite(g, D, r)
            if g not in forms:
                raise RuntimeError("reduction left the reduced set")
    return cycles


def class_number(d, bound=10**6):
    D = discriminant_of(d)
    if abs(D) > bound:
        raise BoundExceeded("|D| = %d exceeds bound" % abs(D))
    if D < 0:
        return len(reduced_forms_negative(D))
    hplus = narrow_class_number_positive(D)
    m = D if D % 4 == 1 else D // 4
    if fundamental_unit(m).norm() == -1:
        return hplus
    return hplus // 2


# ---------------------------------------------------------------- Legendre symbols over O

def _doubled_mod(z, q):
    """Residue of z = (X + Y s)/2 as a pair mod odd q."""
    inv2 = pow(2, -1, q)
    return (z.X * inv2) % q, (z.Y * inv2) % q


def _prime_data(q, d):
    """Kind of q in Q(sqrt d): 'split' with root s, 'inert', or 'ramified'."""
    if d % q == 0:
        return "ramified", None
    if legendre(d, q) == 1:
        return "split", sqrt_mod_prime_power(d, q, 1)
    return "inert", None


def _valuation_split(z, q, s, cap):
    """v_P(z) for P = (q, sqrt d - s), z integral."""
    k = 0
    while k < cap:
        mod = q ** (k + 1)
        sk = sqrt_mod_prime_power(z.d, q, k + 1)
        # choose the lift congruent to s mod q
        if (sk - s) % q:
            sk = (-sk) % mod
        val = (z.X + z.Y * sk) * pow(2, -1, mod) % mod
        if val:
            return k
        k += 1
    return k


def _fq2_pow(a, b, e, d, q):
    """(a + b t)^e in F_q[t]/(t^2 - d)."""
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * a + d * rb * b) % q, (ra * b + rb * a) % q
        a, b = (a * a + d * b * b) % q, (2 * a * b) % q
        e >>= 1
    return ra, rb


def _legendre_at_prime(g, q, kind, s):
    d = g.d
    if kind == "split":
        a, b = _doubled_mod(g, q)
        r = (a + b * s) % q
        if r == 0:
            raise NotCoprime("gamma is divisible by a prime above %d" % q)
        return legendre(r, q)
    if kind == "ramified":
        a, _ = _doubled_mod(g, q)
        if a == 0:
            raise NotCoprime("gamma is divisible by the prime above %d" % q)
        return legendre(a, q)
    a, b = _doubled_mod(g, q)
    if a == 0 and b == 0:
        raise NotCoprime("gamma is divisible by %d" % q)
    ra, rb = _fq2_pow(a, b, (q * q - 1) // 2, d % q, q)
    if rb != 0 or ra not in (1, q - 1):
        raise ArithmeticError("Euler criterion failed")
    return 1 if ra == 1 else -1


def legendre_over_O(g, delta):
    """(g / delta): product over P | delta of (g/P)^{v_P(delta)}."""
    N = delta.norm()
    if not isinstance(N, int):
        raise PreconditionViolated("delta must be integral")
    if N % 2 == 0:
        raise EvenNorm("delta has even norm")
    if abs(N) == 1:
        return 1
    result = 1
    for q, e in _factorint(abs(N)).items():
        kind, s = _prime_data(q, delta.d)
        if kind == "split":
            for root in (s, (-s) % q):
                v = _valuation_split(delta, q, root, e + 1)
                if v:
                    result *= _legendre_at_prime(g, q, "split", root) ** v
        elif kind == "inert":
            v = min(valuation(delta.X, q) if delta.X else 10**9,
                    valuation(delta.Y, q) if delta.Y else 10**9)
            result *= _legendre_at_prime(g, q, "inert", None) ** v
        else:
            vx = 2 * valuation(delta.X, q) if delta.X else 10**9
            vy = 2 * valuation(delta.Y, q) + 1 if delta.Y else 10**9
            result *= _legendre_at_prime(g, q, "ramified", None) ** min(vx, vy)
    return result


def sign_pairing(g, delta):
    return -1 if (g.sign() < 0 and delta.sign() < 0) else 1


def reciprocity_check(g1, d1, g2, d2):
    for z in (g1, d1, g2, d2):
        N = z.norm()
        if not isinstance(N, int) or N % 2 == 0:
            raise PreconditionViolated("all four elements need odd integral norm")
    if not (congruent_mod(g1, g2, 4) and congruent_mod(d1, d2, 4)):
        raise PreconditionViolated("congruence mod 4 fails")
    lhs = (legendre_over_O(g1, d1) * legendre_over_O(d1, g1)
           * legendre_over_O(g2, d2) * legendre_over_O(d2, g2))
    rhs = (sign_pairing(g1, d1) * sign_pairing(g1.conj(), d1.conj())
           * sign_pairing(g2, d2) * sign_pairing(g2.conj(), d2.conj()))
    return lhs == rhs
