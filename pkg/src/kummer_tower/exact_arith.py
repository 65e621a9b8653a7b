"""Integer, modular and small finite-field arithmetic.

Residue fields are F_p[x]/(f) with f an irreducible factor of a cyclotomic
polynomial, so the class of x is a primitive N-th root of unity.  Field
elements are tuples of ints (constant coefficient first).
"""
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import sympy
from sympy.ntheory import n_order

from .errors import BadOrder, CompositeModulus, NotInImage


def is_prime(n):
    return n > 1 and bool(sympy.isprime(n))


def factorint(n):
    return {int(q): int(e) for q, e in sympy.factorint(n).items()}


def mult_order(a, n):
    """Multiplicative order of a modulo n (n >= 2)."""
    if n == 1:
        return 1
    return int(n_order(a % n, n))


def valuation(n, q):
    """q-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def legendre(a, p):
    """Legendre symbol for an odd prime p (0 when p | a)."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime_power(a, q, k):
    """Some x with x^2 = a mod q^k, or None."""
    r = sympy.sqrt_mod(a % q**k, q**k)
    return None if r is None else int(r)


def euler_phi(n):
    return int(sympy.totient(n))


def isqrt_exact(n):
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = sympy.integer_nthroot(n, 2)
    return int(r[0]) if r[1] else None


# ---------------------------------------------------------------- roots of unity

@dataclass(frozen=True)
class RootOfUnity:
    """zeta_n^exponent for a fixed distinguished zeta_n."""
    order: int
    exponent: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise BadOrder("order must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other):
        if other.order != self.order:
            raise BadOrder("orders differ: %d vs %d" % (self.order, other.order))
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def __pow__(self, k):
        return RootOfUnity(self.order, self.exponent * k)

    def inverse(self):
        return RootOfUnity(self.order, -self.exponent)

    def is_one(self):
        return self.exponent == 0

    def multiplicative_order(self):
        return self.order // gcd(self.order, self.exponent)

    def squared_down(self):
        """Image under <,>_n -> <,>_n^2 = <,>_{n/2}."""
        if self.order % 2:
            raise BadOrder("order is odd")
        return RootOfUnity(self.order // 2, self.exponent)

    def lifted(self, n):
        """The same root of unity viewed inside mu_n."""
        if n % self.order:
            raise BadOrder("%d does not divide %d" % (self.order, n))
        return RootOfUnity(n, self.exponent * (n // self.order))

    def __str__(self):
        if self.exponent == 0:
            return "1"
        if 2 * self.exponent == self.order:
            return "-1"
        if self.order == 4:
            return "i" if self.exponent == 1 else "-i"
        return "zeta_%d^%d" % (self.order, self.exponent)


def root_of_unity_one(n):
    return RootOfUnity(n, 0)


# ---------------------------------------------------------------- polynomials mod p

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mulmod(a, b, f, p):
    """a*b mod (f, p); f monic, all sequences constant-first."""
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d] % p
        if c:
            for j in range(k + 1):
                prod[d - k + j] -= c * f[j]
        prod[d] = 0
    out = [x % p for x in prod[:k]]
    return tuple(out + [0] * (k - len(out)))


def cyclotomic_factors_mod_p(n, p):
    """Monic irreducible factors of Phi_n mod p, as constant-first tuples in [0,p)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x, modulus=p)
    out = []
    for fac, _ in poly.factor_list()[1]:
        coeffs = [int(c) % p for c in reversed(fac.all_coeffs())]
        lead = coeffs[-1]
        inv = pow(lead, -1, p)
        out.append(tuple((c * inv) % p for c in coeffs))
    return sorted(out)


@dataclass(frozen=True)
class ResidueField:
    """F_q = F_p[x]/(modulus) with q = p^degree.

    zeta_image is a primitive N-th root of unity (N = cyclo_order); it is the
    image of the global zeta_N under the embedding that picks this field.
    """
    p: int
    cyclo_order: int
    degree: int
    modulus: tuple
    zeta_image: tuple

    @property
    def q(self):
        return self.p ** self.degree

    # element helpers
    def elt(self, value):
        if isinstance(value, tuple):
            v = tuple(c % self.p for c in value)
            return v + (0,) * (self.degree - len(v))
        return ((value % self.p),) + (0,) * (self.degree - 1)

    def one(self):
        return self.elt(1)

    def zero(self):
        return (0,) * self.degree

    def is_zero(self, a):
        return not any(a)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return poly_mulmod(a, b, self.modulus, self.p)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(a, self.q - 2)

    def mult_order(self, a):
        n = self.q - 1
        order = n
        for r, e in factorint(n).items():
            for _ in range(e):
                if self.pow(a, order // r) == self.one():
                    order //= r
                else:
                    break
        return order

    def zeta_power(self, k):
        """Image of zeta_N^k."""
        return self.pow(self.zeta_image, k % self.cyclo_order)

    def mu_generator(self, n):
        """Distinguished generator of mu_n: zeta_image^(N/n)."""
        if self.cyclo_order % n:
            raise BadOrder("%d does not divide cyclotomic order %d" % (n, self.cyclo_order))
        return self.pow(self.zeta_image, self.cyclo_order // n)

    def elements(self):
        """All field elements (small fields only)."""
        from itertools import product
        return [tuple(c) for c in product(range(self.p), repeat=self.degree)]


@lru_cache(maxsize=None)
def build_residue_field(p, n):
    """Residue field of Q(zeta_n) at a prime above p, with a canonical zeta image.

    Canonical choice: the least irreducible factor of Phi_n mod p and the least
    root in it, both compared as constant-first coefficient tuples in [0, p).
    """
    if not is_prime(p):
        raise CompositeModulus("%d is not prime" % p)
    if n < 1 or gcd(p, n) != 1:
        raise BadOrder("gcd(p, n) must be 1 (p=%d, n=%d)" % (p, n))
    k = mult_order(p, n)
    factors = cyclotomic_factors_mod_p(n, p)
    f = factors[0]
    if len(f) - 1 != k:
        raise BadOrder("unexpected factor degree")
    field = ResidueField(p, n, k, f, (0, 1) + (0,) * (k - 2) if k >= 2 else ((-f[0]) % p,))
    x = field.zeta_image
    roots = [field.pow(x, p**i) for i in range(k)]
    zeta = min(roots)
    field = ResidueField(p, n, k, f, zeta)
    if field.mult_order(zeta) != n:
        raise BadOrder("zeta image has wrong order")
    return field


def unit_character(u, n, F):
    """Exponent e with u^((q-1)/n) = (zeta_image^(N/n))^e.

    The discrete log is found by trying all n candidates.
    """
    if F.is_zero(u):
        raise ValueError("unit_character of zero")
    if (F.q - 1) % n:
        raise BadOrder("n=%d does not divide q-1=%d" % (n, F.q - 1))
    target = F.pow(u, (F.q - 1) // n)
    g = F.mu_generator(n)
    cur = F.one()
    for e in range(n):
        if cur == target:
            return RootOfUnity(n, e)
        cur = F.mul(cur, g)
    raise NotInImage("u^((q-1)/n) is not in <zeta>")
