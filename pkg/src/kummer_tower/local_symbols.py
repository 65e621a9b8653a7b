"""Hilbert symbols: tame places, real places, product-formula completion.

Convention: for a = pi^alpha * u, b = pi^beta * w at a tame place,

    <a, b> = omega((-1)^(alpha*beta) * b^alpha / a^beta)^((q-1)/n),

so that <pi, u> = omega(u)^((q-1)/n).  Values are returned as exponents of
the *global* zeta_n; a place whose embedding sends zeta_N to g^s has its
local exponent multiplied by s^{-1} mod n.

norm_oracle is an independent check: it decides local norm membership by
enumerating norms in a p-adic ring and comparing square classes.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import OrderMismatch, PrecisionTooLow, UnsupportedCase, WildPlace
from .exact_arith import ResidueField, RootOfUnity, unit_character, valuation

TAME = "tame"
WILD = "wild"
REAL = "real"
COMPLEX = "complex"


@dataclass(frozen=True)
class PlaceDescriptor:
    kind: str
    label: str
    ramification_index: int = 1
    residue_field: ResidueField = None
    embedding: int = 1   # zeta_N -> zeta_image^embedding
    residue_degree: int = 1
    data: tuple = ()      # free-form extra data (e.g. which real embedding)

    def __post_init__(self):
        if self.kind not in (TAME, WILD, REAL, COMPLEX):
            raise ValueError("bad place kind %r" % self.kind)
        if self.kind == TAME and self.residue_field is None:
            raise ValueError("tame place needs a residue field")


@dataclass(frozen=True)
class ValuedElement:
    """An element seen at one place: valuation and unit part.

    For tame places unit_part is a residue-field element; for real places it
    is +1 or -1 (the sign).
    """
    valuation: int
    unit_part: object

    def __post_init__(self):
        u = self.unit_part
        if isinstance(u, tuple):
            if not any(u):
                raise ValueError("unit part must be nonzero")
        elif u not in (1, -1):
            raise ValueError("real unit part must be a sign")


def tame_symbol(a, b, v, n):
    if v.kind != TAME:
        raise WildPlace("place %s is not tame" % v.label)
    F = v.residue_field
    if F.p % n == 0 or gcd(F.p, n) != 1:
        raise WildPlace("residue characteristic divides n")
    if (F.q - 1) % n:
        raise OrderMismatch("n=%d does not divide q-1=%d" % (n, F.q - 1))
    al, be = a.valuation, b.valuation
    x = F.mul(F.pow(b.unit_part, al), F.pow(a.unit_part, -be))
    if (al * be) % 2:
        x = F.neg(x)
    local = unit_character(x, n, F)
    s = v.embedding % n if n > 1 else 0
    if n > 1 and gcd(s, n) != 1:
        raise OrderMismatch("embedding exponent not invertible mod n")
    s_inv = pow(s, -1, n) if n > 1 else 0
    return RootOfUnity(n, local.exponent * s_inv)


def real_symbol(a_sign, b_sign):
    return RootOfUnity(2, 1 if (a_sign < 0 and b_sign < 0) else 0)


def complete_product(partial, n=None):
    """The value at the one remaining place making the product trivial."""
    partial = list(partial)
    if n is None:
        if not partial:
            raise OrderMismatch("cannot infer order from an empty product")
        n = partial[0].order
    total = 0
    for r in partial:
        if r.order != n:
            raise OrderMismatch("mixed orders in product formula")
        total += r.exponent
    return RootOfUnity(n, -total)


# ---------------------------------------------------------------- local rings

def _polymul(a, b, f):
    """Product in Z[t]/(f) for monic f (constant-first)."""
    d = len(f) - 1
    if d == 1:
        return [a[0] * b[0]]
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] -= c * f[j]
    return prod[:d]


def _det(m):
    """Bareiss determinant of an integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _hnf_rows(rows, d):
    """Upper triangular HNF basis (d x d) of a full-rank integer row lattice."""
    rows = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(d):
        piv = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            a = piv[0]
            new = [a]
            for r in piv[1:]:
                q = r[col] // a[col]
                r2 = [x - q * y for x, y in zip(r, a)]
                (new if r2[col] else rest).append(r2)
            piv = new
        if not piv:
            raise ValueError("lattice is not full rank")
        a = piv[0]
        if a[col] < 0:
            a = [-x for x in a]
        basis.append(a)
        rows = rest
    for i in range(d - 1, -1, -1):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


class LocalRing:
    """O = Z_p[t]/(f) for Q_p, Q_p(i), Q_2(zeta_8), with uniformizer data."""

    BASES = {
        None: ([0, 1], 1, [0]),
        "i": ([1, 0, 1], None, None),
        "zeta8": ([1, 0, 0, 0, 1], None, None),
    }

    def __init__(self, p, tag=None):
        if p not in (2, 3):
            raise UnsupportedCase("norm oracle supports p in {2, 3}")
        if tag not in (None, "i", "zeta8"):
            raise UnsupportedCase("unknown local base %r" % tag)
        if tag == "zeta8" and p != 2:
            raise UnsupportedCase("zeta8 base only over Q_2")
        self.p, self.tag = p, tag
        if tag is None:
            self.f = [0, 1]
        elif tag == "i":
            self.f = [1, 0, 1]
        else:
            self.f = [1, 0, 0, 0, 1]
        self.d = len(self.f) - 1
        if p == 2 and tag == "i":
            self.e, self.fdeg, self.pi = 2, 1, [1, 1]
        elif p == 2 and tag == "zeta8":
            self.e, self.fdeg, self.pi = 4, 1, [1, -1, 0, 0]
        elif tag == "i":            # Q_3(i) is unramified
            self.e, self.fdeg, self.pi = 1, 2, [3, 0]
        else:
            self.e, self.fdeg, self.pi = 1, 1, [p]
        self._ideals = {}

    # arithmetic
    def mul(self, a, b):
        return _polymul(a, b, self.f)

    def mult_matrix(self, a):
        rows = []
        basis_vec = [1] + [0] * (self.d - 1)
        cur = list(a)
        for _ in range(self.d):
            rows.append(cur)
            cur = self.mul(cur, [0, 1] + [0] * (self.d - 2)) if self.d > 1 else cur
        return rows

    def norm(self, a):
        return _det(self.mult_matrix(a)) if self.d > 1 else a[0]

    def embed_rational(self, x):
        return [x] + [0] * (self.d - 1)

    def ideal_basis(self, k):
        """HNF of pi^k O."""
        if k not in self._ideals:
            g = [1] + [0] * (self.d - 1)
            for _ in range(k):
                g = self.mul(g, self.pi)
            rows = []
            cur = g
            for _ in range(self.d):
                rows.append(cur)
                cur = self.mul(cur, [0, 1] + [0] * (self.d - 2)) if self.d > 1 else cur
            rows += [[self.p ** k if i == j else 0 for j in range(self.d)] for i in range(self.d)]
            self._ideals[k] = _hnf_rows(rows, self.d)
        return self._ideals[k]

    def reduce(self, a, k):
        """Canonical representative of a modulo pi^k O."""
        a = list(a)
        for i, row in enumerate(self.ideal_basis(k)):
            q = a[i] // row[i]
            if q:
                a = [x - q * y for x, y in zip(a, row)]
        return tuple(a)

    def residues(self, k):
        """All canonical representatives of O / pi^k."""
        diag = [row[i] for i, row in enumerate(self.ideal_basis(k))]
        for c in product(*[range(m) for m in diag]):
            yield self.reduce(c, k)

    def valuation(self, a, cap):
        """pi-adic valuation, or cap if a is 0 mod pi^cap."""
        for k in range(cap):
            if any(self.reduce(a, k + 1)):
                return k
        return cap

    def divide_pi(self, a):
        """Exact a / pi for a in pi O."""
        if self.d == 1:
            assert a[0] % self.p == 0
            return [a[0] // self.p]
        if self.fdeg == 2:
            assert all(x % 3 == 0 for x in a)
            return [x // 3 for x in a]
        # pi^{-1} = adj(pi) / N(pi); N(pi) = 2 for both ramified bases.
        adj = self._adj_pi()
        c = self.mul(a, adj)
        npi = self.norm(self.pi)
        assert all(x % npi == 0 for x in c), "not divisible by the uniformizer"
        return [x // npi for x in c]

    def _adj_pi(self):
        if not hasattr(self, "_adj"):
            # adjugate via cofactor expansion: solve pi * x = N(pi) exactly
            from sympy import Matrix
            M = Matrix(self.mult_matrix(self.pi)).T
            npi = self.norm(self.pi)
            rhs = Matrix([npi] + [0] * (self.d - 1))
            sol = M.LUsolve(rhs)
            self._adj = [int(x) for x in sol]
        return self._adj


def _as_local(x, R):
    if isinstance(x, (list, tuple)):
        return list(x) + [0] * (R.d - len(x))
    x = Fraction(x)
    # same square class as numerator * denominator
    return R.embed_rational(x.numerator * x.denominator)


def _unit_square_classes(R):
    """Squares of units modulo pi^(2e+1)."""
    k = 2 * R.e + 1
    squares = set()
    for r in R.residues(k):
        if R.valuation(r, 1) == 0:
            squares.add(R.reduce(R.mul(r, r), k))
    return k, sorted(squares)


class _SquareClasses:
    def __init__(self, R):
        self.R = R
        self.k, self.squares = _unit_square_classes(R)
        self.cap = 64

    def split(self, a):
        v = self.R.valuation(a, self.cap)
        if v >= self.cap:
            raise PrecisionTooLow("element vanishes to working precision")
        u = a
        for _ in range(v):
            u = self.R.divide_pi(u)
        return v, u

    def canon_unit(self, u):
        R = self.R
        return min(R.reduce(R.mul(u, s), self.k) for s in self.squares)

    def cls(self, a):
        v, u = self.split(a)
        return (v % 2, self.canon_unit(u))

    def mul(self, c1, c2):
        u = self.R.mul(list(c1[1]), list(c2[1]))
        return ((c1[0] + c2[0]) % 2, self.canon_unit(u))

    def group_size(self):
        if self.R.p == 2:
            return 2 ** (self.R.d + 2)
        return 4


def safe_precision(base_e):
    return 2 * base_e + 2


def default_precision(p, base_e, n):
    return 2 * base_e * (valuation(n, p) + 1) + 3 if n % p == 0 else 2 * base_e + 3


def norm_oracle(a, b, base, n=2, precision=None):
    """Is a a norm from base(b^(1/n))?  base = (p, tag), tag in {None, 'i', 'zeta8'}.

    a and b may be rationals or coefficient lists (p-adic approximations in
    the power basis of the base ring).  Only n = 2 is supported.
    """
    if n != 2:
        raise UnsupportedCase("norm oracle implemented for n = 2 only")
    p, tag = base
    R = LocalRing(p, tag)
    if precision is None:
        precision = default_precision(p, R.e, n)
    if precision < safe_precision(R.e):
        raise PrecisionTooLow("precision %d below safe bound %d" % (precision, safe_precision(R.e)))
    SC = _SquareClasses(R)
    av = _as_local(a, R)
    bv = _as_local(b, R)
    if not any(av) or not any(bv):
        raise ValueError("arguments must be nonzero")
    if all(x == 0 for x in av[1:]) and av[0] == 1:
        return True
    vb, ub = SC.split(bv)
    # normalise b to valuation 0 or 1
    bnorm = ub if vb % 2 == 0 else R.mul(ub, R.pi)
    bcls = SC.cls(bnorm)
    one = SC.cls(R.embed_rational(1))
    if bcls == one:
        return True
    target = SC.group_size() // 2
    span = {one}

    def absorb(c):
        nonlocal span
        if c not in span:
            span = span | {SC.mul(c, s) for s in span}

    M = precision
    limit = M - 2 * R.e - 1
    for x in R.residues(M):
        # N(x + sqrt b) = x^2 - b
        N = [s - t for s, t in zip(R.mul(list(x), list(x)), bnorm)]
        if R.valuation(N, limit + 1) <= limit:
            absorb(SC.cls(N))
        # N(1 + y sqrt b) = 1 - y^2 b, y in pi O
        if R.valuation(list(x), 1) >= 1:
            y2b = R.mul(R.mul(list(x), list(x)), bnorm)
            N = [(1 if i == 0 else 0) - t for i, t in enumerate(y2b)]
            absorb(SC.cls(N))
        if len(span) >= target:
            break
    if len(span) != target:
        raise PrecisionTooLow("norm classes not resolved at precision %d" % M)
    return SC.cls(av) in span
