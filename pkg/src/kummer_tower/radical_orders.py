"""Pure cubic and quartic fields Q(p^(1/3)), Q(p^(1/4)).

Elements are RadicalElement: rational coefficients on 1, theta, theta^2(,
theta^3) with theta^deg = p.  Units are found by a lattice scan of the log
embedding (incremental LLL along a line of weights), roots by inverting the
embeddings and checking exactly.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

import mpmath as mp
import warnings

from sympy import Poly, Symbol, factor_list

from .errors import BoundExceeded, NoSolution, NotAUnit, PreconditionViolated, UnsupportedCase
from .exact_arith import is_prime
from .lattice import elementary_divisors, hnf_rows, lll, short_vectors
from .quad_field import QuadElement, dyadic_generator, fundamental_unit


@dataclass(frozen=True)
class RadicalElement:
    degree: int
    coeffs: tuple
    p: int

    def __post_init__(self):
        if self.degree not in (3, 4):
            raise ValueError("degree must be 3 or 4")
        c = tuple(Fraction(x) for x in self.coeffs)
        c = c + (Fraction(0),) * (self.degree - len(c))
        if len(c) != self.degree:
            raise ValueError("too many coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def theta(cls, p, degree):
        return cls(degree, (0, 1), p)

    @classmethod
    def rational(cls, p, degree, r):
        return cls(degree, (r,), p)

    @classmethod
    def from_quad(cls, x):
        """Q(sqrt p) inside Q(p^(1/4)): sqrt p = theta^2."""
        return cls(4, (x.x, 0, x.y, 0), x.d)

    @classmethod
    def from_relative(cls, alpha, beta):
        """alpha + beta*theta with alpha, beta in Q(sqrt p)."""
        return cls(4, (alpha.x, beta.x, alpha.y, beta.y), alpha.d)

    def _coerce(self, o):
        if isinstance(o, (int, Fraction)):
            return RadicalElement.rational(self.p, self.degree, o)
        if (o.degree, o.p) != (self.degree, self.p):
            raise ValueError("elements of different fields")
        return o

    def __add__(self, o):
        o = self._coerce(o)
        return RadicalElement(self.degree, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.p)

    __radd__ = __add__

    def __neg__(self):
        return RadicalElement(self.degree, tuple(-a for a in self.coeffs), self.p)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        n = self.degree
        r = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        k = i + j
                        if k >= n:
                            r[k - n] += self.p * a * b
                        else:
                            r[k] += a * b
        return RadicalElement(n, tuple(r), self.p)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = RadicalElement.rational(self.p, self.degree, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def is_zero(self):
        return not any(self.coeffs)

    def mult_matrix(self):
        """Rows: coordinates of self*theta^j."""
        rows = []
        cur = self
        th = RadicalElement.theta(self.p, self.degree)
        for _ in range(self.degree):
            rows.append(list(cur.coeffs))
            cur = cur * th
        return rows

    def norm(self):
        return _frac_det(self.mult_matrix())

    def trace(self):
        return self.degree * self.coeffs[0]

    def inverse(self):
        # solve x * self = 1 via the multiplication matrix
        M = self.mult_matrix()
        n = self.degree
        sol = _frac_solve([[M[j][i] for j in range(n)] for i in range(n)],
                          [Fraction(1)] + [Fraction(0)] * (n - 1))
        return RadicalElement(n, tuple(sol), self.p)

    def exact_div(self, o):
        q = self * self._coerce(o).inverse()
        return q if is_integral(q) else None

    # relative structure over Q(sqrt p) (degree 4)
    def alpha(self):
        self._need4()
        return _quad(self.coeffs[0], self.coeffs[2], self.p)

    def beta(self):
        self._need4()
        return _quad(self.coeffs[1], self.coeffs[3], self.p)

    def relative_conj(self):
        """theta -> -theta."""
        self._need4()
        a = self.coeffs
        return RadicalElement(4, (a[0], -a[1], a[2], -a[3]), self.p)

    def relative_norm(self):
        """alpha^2 - sqrt(p) beta^2 as an element of Q(sqrt p)."""
        a = self * self.relative_conj()
        return _quad(a.coeffs[0], a.coeffs[2], self.p)

    def relative_trace(self):
        return _quad(2 * self.coeffs[0], 2 * self.coeffs[2], self.p)

    def _need4(self):
        if self.degree != 4:
            raise ValueError("relative structure needs degree 4")

    def embeddings(self):
        """Values at theta*zeta^k, k = 0..deg-1 (zeta = i or a primitive cube root of 1)."""
        n = self.degree
        th = mp.root(mp.mpf(self.p), n)
        out = []
        for k in range(n):
            z = th * mp.expjpi(mp.mpf(2 * k) / n)
            out.append(mp.fsum(mp.mpf(c.numerator) / c.denominator * z ** j
                               for j, c in enumerate(self.coeffs)))
        return out

    def real_value(self):
        return self.embeddings()[0].real

    def sign(self):
        with mp.workdps(30 + self.height_bits() // 3):
            v = self.real_value()
        if v == 0:
            raise ArithmeticError("sign undecided")
        return 1 if v > 0 else -1

    def sign_conj(self):
        """Sign at theta -> -theta (degree 4)."""
        return self.relative_conj().sign()

    def height(self):
        return max(abs(c) for c in self.coeffs)

    def height_bits(self):
        return max(int(abs(c)).bit_length() + c.denominator.bit_length() for c in self.coeffs)

    def int_coeffs(self):
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def __str__(self):
        names = ["", "t", "t^2", "t^3"]
        parts = ["%s%s" % (c, ("*" + names[j]) if j else "") for j, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


def _quad(x, y, d):
    return QuadElement.of(x, y, d)


def _frac_det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _frac_solve(A, b):
    n = len(A)
    M = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * bb for a, bb in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


# ---------------------------------------------------------------- orders

def order_basis(p, degree):
    """Z-basis (coefficient tuples) of the order used for p.

    Degree 3: Z[theta] (maximal when p^2 != 1 mod 9).  Degree 4: Z[theta]
    for p = 2 or p = 3 mod 4, and Z[theta, (1+theta^2)/2] for p = 1 mod 4.
    """
    h = Fraction(1, 2)
    if degree == 4 and p % 4 == 1:
        return [(1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, h, 0, h)]
    return [tuple(1 if i == j else 0 for j in range(degree)) for i in range(degree)]


def order_is_maximal(p, degree):
    if degree == 3:
        return p * p % 9 != 1
    return p == 2 or p % 4 == 3 or p % 8 == 5


def _basis_coords(x, basis):
    n = len(basis)
    return _frac_solve([[basis[j][i] for j in range(n)] for i in range(n)], list(x.coeffs))


def is_integral(x):
    return all(c.denominator == 1 for c in _basis_coords(x, order_basis(x.p, x.degree)))


def from_basis(p, degree, v):
    basis = order_basis(p, degree)
    return RadicalElement(degree, tuple(sum(Fraction(v[i]) * basis[i][j] for i in range(degree))
                                        for j in range(degree)), p)


# ---------------------------------------------------------------- exact roots

def kth_root(x, k):
    """y with y^k == x, or None.  Candidates come from the embeddings; the result is checked exactly."""
    n = x.degree
    with mp.workdps(40 + x.height_bits() // max(k, 1)):
        vals = x.embeddings()
        th = mp.root(mp.mpf(x.p), n)
        # conjugate pairs: degree 4 -> 0, 2 real, 1/3 pair; degree 3 -> 0 real, 1/2 pair
        pairs = {4: (0, 2, 1), 3: (0, 1)}[n]
        options = []
        for idx in pairs:
            v = vals[idx]
            real = (n == 4 and idx in (0, 2)) or (n == 3 and idx == 0)
            if real:
                v = v.real
                if k % 2 == 0:
                    if v < 0:
                        return None
                    r = mp.root(v, k)
                    options.append([r, -r])
                else:
                    options.append([mp.root(v, k) if v >= 0 else -mp.root(-v, k)])
            else:
                r = mp.root(mp.mpc(v), k)
                w = mp.expjpi(mp.mpf(2) / k)
                options.append([r * w ** j for j in range(k)])
        basis = order_basis(x.p, n)
        for choice in product(*options):
            if n == 4:
                y = [choice[0], choice[2], choice[1], mp.conj(choice[2])]
            else:
                y = [choice[0], choice[1], mp.conj(choice[1])]
            coeffs = []
            for m in range(n):
                s = mp.fsum(y[j] * mp.expjpi(-mp.mpf(2 * j * m) / n) for j in range(n))
                coeffs.append((s / (n * th ** m)).real)
            # round in the order basis: denominators at most 2
            cand = RadicalElement(n, tuple(Fraction(int(mp.nint(2 * c)), 2) for c in coeffs), x.p)
            if all(c.denominator == 1 for c in _basis_coords(cand, basis)) and cand ** k == x:
                return cand
    return None


def relative_sqrt_check(x):
    """Square root by the relative formula (gamma + delta theta)^2 = alpha + beta theta."""
    alpha, beta = x.alpha(), x.beta()
    n0 = _quad_sqrt(x.relative_norm())
    if n0 is None:
        return None
    for s in (1, -1):
        c = _quad_sqrt_frac(((alpha.x + s * n0.x) / 2, (alpha.y + s * n0.y) / 2), x.p)
        if c is None or c == (0, 0):
            continue
        # delta = beta / (2 gamma)
        gx, gy = c
        den = 4 * (gx * gx - x.p * gy * gy)
        dx = (beta.x * 2 * gx - x.p * beta.y * 2 * gy) / den
        dy = (beta.y * 2 * gx - beta.x * 2 * gy) / den
        cand = RadicalElement(4, (gx, dx, gy, dy), x.p)
        if cand * cand == x:
            return cand
    if beta.is_zero():
        c = _quad_sqrt_frac((alpha.y, alpha.x / x.p), x.p)   # delta^2 = alpha / sqrt p
        if c is not None:
            cand = RadicalElement(4, (0, c[0], 0, c[1]), x.p)
            if cand * cand == x:
                return cand
    return None


def _rat_sqrt(r):
    r = Fraction(r)
    if r < 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def _quad_sqrt_frac(z, d):
    x, y = Fraction(z[0]), Fraction(z[1])
    m = _rat_sqrt(x * x - d * y * y)
    if m is None:
        return None
    for s in (1, -1):
        c = _rat_sqrt((x + s * m) / 2)
        if c is None:
            continue
        if c == 0:
            if y == 0:
                e = _rat_sqrt(x / d)
                if e is not None:
                    return (Fraction(0), e)
            continue
        e = y / (2 * c)
        if c * c + d * e * e == x:
            return (c, e)
    return None


def _quad_sqrt(z):
    r = _quad_sqrt_frac((z.x, z.y), z.d)
    if r is None:
        return None
    try:
        return QuadElement.of(r[0], r[1], z.d)
    except ValueError:
        return None


# ---------------------------------------------------------------- unit scan

def _scaled_rows(elts, t, degree):
    rows = []
    for e in elts:
        v = e.embeddings()
        if degree == 4:
            w = [mp.e ** (-t), mp.e ** t, mp.sqrt(2), mp.sqrt(2)]
            rows.append([v[0].real * w[0], v[2].real * w[1], v[1].real * w[2], v[1].imag * w[3]])
        else:
            w = [mp.e ** (-t), mp.e ** (t / 2) * mp.sqrt(2)]
            rows.append([v[0].real * w[0], v[1].real * w[1], v[1].imag * w[1]])
    return rows


def _window_radius(degree, delta):
    if degree == 4:
        return 4 * mp.e ** (2 * delta) * mp.mpf("1.0001")
    return (mp.e ** (2 * delta) + 2 * mp.e ** delta) * mp.mpf("1.0001")


def unit_scan(p, degree, tmax=4000.0, delta=1.5):
    """Smallest nontrivial unit u with relative norm 1 (degree 4) or norm +-1 (degree 3).

    The log embedding of such units is a line; windows of width 2*delta along
    it are enumerated in order of |log u|, so the first hit is fundamental.
    Returns (u, log|u| at the first real place).
    """
    basis = [RadicalElement(degree, b, p) for b in order_basis(p, degree)]
    cur = [[1 if i == j else 0 for j in range(degree)] for i in range(degree)]
    t = 0.0
    while t < tmax:
        with mp.workdps(int(40 + t / 1.1)):
            elts = [_combine(basis, c, p, degree) for c in cur]
            Br, U = lll(_scaled_rows(elts, mp.mpf(t), degree))
            cur = [[sum(U[i][k] * cur[k][j] for k in range(degree)) for j in range(degree)]
                   for i in range(degree)]
            found = []
            for x in short_vectors(Br, _window_radius(degree, delta)):
                if not any(x):
                    continue
                v = [sum(x[i] * cur[i][k] for i in range(degree)) for k in range(degree)]
                u = _combine(basis, v, p, degree)
                if _is_target_unit(u):
                    lg = mp.log(abs(u.real_value()))
                    if abs(lg) > 0.01:
                        found.append((abs(lg), lg, u))
            if found:
                found.sort(key=lambda z: z[0])
                _, lg, u = found[0]
                if lg < 0:
                    u = u.inverse()
                if u.sign() < 0:
                    u = -u
                return u
        t += 2 * delta
    raise BoundExceeded("no unit found up to log size %s" % tmax)


def _combine(basis, v, p, degree):
    c = [Fraction(0)] * degree
    for a, b in zip(v, basis):
        if a:
            for j in range(degree):
                c[j] += a * b.coeffs[j]
    return RadicalElement(degree, tuple(c), p)


def _is_target_unit(u):
    if u.degree == 4:
        r = u.relative_norm()
        return r.X == 2 and r.Y == 0 and u.coeffs[1:] != (0, 0, 0)
    return abs(u.norm()) == 1 and u.coeffs[1:] != (0, 0)


# ---------------------------------------------------------------- quartic units and eta

@dataclass
class QuarticUnits:
    p: int
    eps: QuadElement
    u0: RadicalElement           # fundamental unit of relative norm 1
    extra: list = field(default_factory=list)   # square roots adjoined, e.g. eta

    def square_class_reps(self):
        """Representatives of E/E^2 as RadicalElements."""
        gens = [RadicalElement.rational(self.p, 4, -1), RadicalElement.from_quad(self.eps), self.u0]
        gens = _reduce_square_gens(gens + self.extra)
        reps = []
        for bits in product((0, 1), repeat=len(gens)):
            r = RadicalElement.rational(self.p, 4, 1)
            for g, b in zip(gens, bits):
                if b:
                    r = r * g
            reps.append(r)
        return reps, gens


def _reduce_square_gens(gens):
    """Drop generators that are a square times a product of the others (F_2 basis of E/E^2)."""
    out = []
    for g in gens:
        dependent = False
        for bits in product((0, 1), repeat=len(out)):
            r = g
            for h, b in zip(out, bits):
                if b:
                    r = r * h
            if kth_root(r, 2) is not None:
                dependent = True
                break
        if not dependent:
            out.append(g)
    return out


@lru_cache(maxsize=64)
def quartic_units(p, scan_tmax=4000.0):
    """E(Q(p^(1/4))) mod torsion: eps, u0 and square roots of +-eps^j u0^k."""
    eps = fundamental_unit(p)
    u0 = unit_scan(p, 4, tmax=scan_tmax)
    E = QuarticUnits(p, eps, u0)
    base = [RadicalElement.rational(p, 4, -1), RadicalElement.from_quad(eps), u0]
    extra = []
    for bits in product((0, 1), repeat=3):
        if not any(bits):
            continue
        r = RadicalElement.rational(p, 4, 1)
        for g, b in zip(base, bits):
            if b:
                r = r * g
        s = kth_root(r, 2)
        if s is not None:
            extra.append(s)
    E.extra = extra
    return E


def _height_key(u):
    return (u.height(), tuple(-c for c in u.coeffs))


def relative_unit(p, eps=None, bound=None, method="scan"):
    """Totally positive eta with relative norm exactly eps.

    method="search": height search over beta = c + d sqrt p with
    alpha^2 = eps + sqrt(p) beta^2 (BoundExceeded past `bound`).
    method="scan": from the unit lattice, eta^2 = +-eps u0^(+-1).
    Both return the representative of least height in eta*u0^k, with
    positive theta-coefficient.
    """
    if p % 16 != 7 or not is_prime(p):
        raise PreconditionViolated("relative_unit needs a prime p = 7 mod 16")
    if eps is None:
        eps = fundamental_unit(p)
    if method == "search":
        eta = _eta_search(p, eps, 200 if bound is None else bound)
        return _normalize_eta(eta, eps, None)
    E = quartic_units(p, 4000.0 if bound is None else float(bound))
    epsK = RadicalElement.from_quad(eps)
    for cand in (epsK * E.u0, -(epsK * E.u0), epsK * E.u0.inverse(), -(epsK * E.u0.inverse())):
        r = kth_root(cand, 2)
        if r is not None and r.relative_norm() == eps:
            return _normalize_eta(r, eps, E.u0)
    raise NoSolution("no unit of relative norm eps among the square classes")


def _normalize_eta(eta, eps, u0):
    if eta.relative_norm() != eps:
        raise NoSolution("relative norm mismatch")
    cands = [eta, eta.relative_conj()]
    if u0 is not None:
        cur = eta
        for _ in range(3):
            cur = cur * u0
            cands.append(cur)
        cur = eta
        for _ in range(3):
            cur = cur * u0.inverse()
            cands.append(cur)
    cands = [c for c in cands if c.relative_norm() == eps]
    best = min(cands, key=lambda c: c.height())
    best = min([c for c in cands if c.height() == best.height()], key=_height_key)
    # eta(-theta) = relative conjugate has the same sign since their product eps > 0
    if best.sign() < 0:
        best = -best
    if best.coeffs[1] < 0 and best.relative_conj().height() == best.height():
        best = best.relative_conj()
    return best


def _eta_search(p, eps, bound):
    x, y = eps.x, eps.y
    for h in range(0, bound + 1):
        for c in range(-h, h + 1):
            ds = [-h, h] if abs(c) != h else range(-h, h + 1)
            for d in ds:
                # alpha^2 = eps + sqrt p (c + d sqrt p)^2
                X = x + 2 * p * c * d
                Y = y + c * c + p * d * d
                r = _quad_sqrt_frac((X, Y), p)
                if r is None:
                    continue
                eta = RadicalElement(4, (r[0], c, r[1], d), p)
                if is_integral(eta) and eta.relative_norm() == eps:
                    return eta
    raise BoundExceeded("no relative unit with height <= %d" % bound)


def eta_is_not_degenerate(eta, eps):
    """eta * (+-eps^k) is never a square for k in {0, 1}."""
    epsK = RadicalElement.from_quad(eps)
    for s in (1, -1):
        for k in (0, 1):
            if kth_root(eta * epsK ** k * s, 2) is not None:
                return False
    return True


def trace_valuation(eta, pi):
    """v_q(Tr(eta)) = v_q(2 alpha), q = (pi) the prime of Q(sqrt p) above 2."""
    if abs(eta.norm()) != 1:
        raise NotAUnit("eta is not a unit")
    t = eta.relative_trace()
    if t.is_zero():
        raise ValueError("zero trace")
    v = 0
    while True:
        q = t.exact_div(pi)
        if q is None:
            return v
        t, v = q, v + 1


def radical_congruence(eta):
    """eta = -sgn(eta) mod theta, i.e. a_0 = -sgn(eta) mod p."""
    a0 = eta.coeffs[0]
    if a0.denominator % eta.p == 0:
        return False
    return (a0.numerator * pow(a0.denominator, -1, eta.p) + eta.sign()) % eta.p == 0


# ---------------------------------------------------------------- principality

@dataclass(frozen=True)
class PrincipalityVerdict:
    status: str          # "Principal" | "NonPrincipal" | "Inconclusive"
    generator: object = None
    certificate: str = ""

    @property
    def is_principal(self):
        return self.status == "Principal"


def _dyadic_base_generator(p):
    """g in Q(sqrt p) with q^2 = (g) for the prime q of Q(p^(1/4)) above 2."""
    if p == 2:
        return None
    if p % 8 == 7:
        return dyadic_generator(p)
    if p % 8 == 5:
        return QuadElement.rational(2, p)
    if p % 8 == 3:
        # an element of norm -+2 from the continued fraction of sqrt p
        from .quad_field import convergent_elements
        for z in convergent_elements(p, 400):
            if abs(z.norm()) == 2:
                return z
        raise NoSolution("no element of norm +-2 found")
    raise UnsupportedCase("p = 1 mod 8")


def norm_two_principality(p, degree=4, target=None, tmax=4000.0):
    """Is the prime above 2 (degree 4) or above `target` (degree 3) principal?

    Degree 4: q^2 = (g) with g from Q(sqrt p), so q is principal iff g*u is a
    square for a unit u; E/E^2 is known exactly from the unit scan.
    Degree 3: the prime above 3 satisfies P^3 = (3), principal iff 3*eps0^j
    is a cube for some j.
    """
    if degree == 4:
        if p == 2:
            return PrincipalityVerdict("Principal", RadicalElement.theta(2, 4), "q = (theta)")
        if p % 8 == 1:
            return PrincipalityVerdict("Inconclusive", None, "p = 1 mod 8: 2 is not totally ramified")
        g = RadicalElement.from_quad(_dyadic_base_generator(p))
        E = quartic_units(p, tmax)
        reps, gens = E.square_class_reps()
        for u in reps:
            r = kth_root(g * u, 2)
            if r is not None:
                return PrincipalityVerdict("Principal", r, "q^2 = (g), q = (sqrt(g*u))")
        return PrincipalityVerdict(
            "NonPrincipal", None,
            "g*u is not a square for all %d classes u of E/E^2" % len(reps))
    if degree == 3:
        t = 3 if target is None else target
        if t == p:
            return PrincipalityVerdict("Principal", RadicalElement.theta(p, 3), "(p) = (theta)^3")
        if t != 3 or p % 3 == 0 or p * p % 9 == 1:
            raise UnsupportedCase("degree 3 principality supports the totally ramified prime above 3")
        e0 = unit_scan(p, 3, tmax=tmax)
        three = RadicalElement.rational(p, 3, 3)
        for j in range(3):
            r = kth_root(three * e0 ** j, 3)
            if r is not None:
                return PrincipalityVerdict("Principal", r, "P^3 = (3)")
        return PrincipalityVerdict("NonPrincipal", None, "3*eps0^j is not a cube for j = 0, 1, 2")
    raise ValueError("degree must be 3 or 4")


# ---------------------------------------------------------------- cubic class groups

def _elt_mul_int(a, b, p):
    """Product of integer coordinate vectors in Z[theta], theta^3 = p."""
    r = [0] * 3
    for i in range(3):
        for j in range(3):
            k = i + j
            if k >= 3:
                r[k - 3] += p * a[i] * b[j]
            else:
                r[k] += a[i] * b[j]
    return r


@dataclass(frozen=True)
class CubicIdeal:
    p: int
    hnf: tuple     # rows of an upper-triangular basis

    @classmethod
    def from_gens(cls, p, gens):
        rows = []
        for g in gens:
            for b in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
                rows.append(_elt_mul_int(list(g), b, p))
        return cls(p, tuple(tuple(r) for r in hnf_rows(rows, 3)))

    def norm(self):
        d = 1
        for i, r in enumerate(self.hnf):
            d *= r[i]
        return abs(d)

    def __mul__(self, o):
        gens = [_elt_mul_int(list(a), list(b), self.p) for a in self.hnf for b in o.hnf]
        return CubicIdeal(self.p, tuple(tuple(r) for r in hnf_rows(gens, 3)))

    def contains(self, v):
        v = list(v)
        for i, r in enumerate(self.hnf):
            if v[i] % r[i]:
                return False
            q = v[i] // r[i]
            v = [a - q * b for a, b in zip(v, r)]
        return not any(v)


def unit_ideal(p):
    return CubicIdeal(p, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


@dataclass
class CubicPrime:
    q: int
    f: int
    e: int
    ideal: CubicIdeal
    powers: list = field(default_factory=list)

    def power(self, k):
        while len(self.powers) <= k:
            if not self.powers:
                self.powers.append(unit_ideal(self.ideal.p))
            else:
                self.powers.append(self.powers[-1] * self.ideal)
        return self.powers[k]


def cubic_primes_above(q, p):
    x = Symbol("x")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, facs = factor_list(x ** 3 - p, modulus=q)
    out = []
    for g, e in facs:
        c = [int(v) % q for v in Poly(g, x).all_coeffs()[::-1]]
        gen = c + [0] * (3 - len(c)) if len(c) <= 3 else None
        if gen is None:   # degree-3 irreducible factor: the prime is (q)
            I = CubicIdeal.from_gens(p, [[q, 0, 0]])
        else:
            I = CubicIdeal.from_gens(p, [[q, 0, 0], gen])
        out.append(CubicPrime(q, Poly(g, x).degree(), e, I))
    return out


def _cubic_norm(a, b, c, p):
    return a ** 3 + p * b ** 3 + p * p * c ** 3 - 3 * p * a * b * c


def minkowski_bound_cubic(p):
    disc = 27 * p * p
    return float(mp.mpf(4) / mp.pi * mp.mpf(6) / 27 * mp.sqrt(disc))


@dataclass
class ClassGroupResult:
    status: str                 # "Certified" | "Inconclusive"
    invariants: list            # elementary divisors of the relation quotient
    ell: int = 3
    sylow: list = field(default_factory=list)   # invariants of the ell-part
    note: str = ""


def _valuations(v, fb, p):
    """Exponent vector of the principal ideal (v) over the factor base, or None if not smooth."""
    N = abs(_cubic_norm(v[0], v[1], v[2], p))
    if N == 0:
        return None
    rest = N
    qs = sorted({P.q for P in fb})
    for q in qs:
        while rest % q == 0:
            rest //= q
    if rest != 1:
        return None
    out = []
    for P in fb:
        k = 0
        if N % P.q == 0:
            while P.power(k + 1).contains(v):
                k += 1
        out.append(k)
    # consistency: norms must match
    tot = 1
    for P, k in zip(fb, out):
        tot *= P.q ** (P.f * k)
    return out if tot == N else None


def class_group_small(p, degree=3, ell=3, cap=200, height=None):
    """Class group of Z[p^(1/3)] from primes below the Minkowski bound.

    The ell-part is certified by testing every nonzero element of the
    relation quotient's ell-torsion for principality; the rest of the group
    is an upper bound (a quotient of the relation group).
    """
    if degree != 3:
        return ClassGroupResult("Inconclusive", [], ell, [], "degree 4 class groups are not computed")
    if not order_is_maximal(p, 3):
        raise UnsupportedCase("Z[theta] is not maximal for p^2 = 1 mod 9")
    M = minkowski_bound_cubic(p)
    if M > cap:
        return ClassGroupResult("Inconclusive", [], ell, [], "Minkowski bound %.1f exceeds cap" % M)
    fb = []
    for q in range(2, int(M) + 1):
        if is_prime(q):
            fb.extend(cubic_primes_above(q, p))
    k = len(fb)
    rels = []
    # (q) relations
    for q in sorted({P.q for P in fb}):
        rels.append([P.e if P.q == q else 0 for P in fb])
    H = 3 if height is None else height
    seen_det = None
    stable = 0
    while True:
        for a in range(-H, H + 1):
            for b in range(-H, H + 1):
                for c in range(0, H + 1):
                    if max(abs(a), abs(b), abs(c)) != H or (c == 0 and (b < 0 or (b == 0 and a <= 0))):
                        continue
                    if gcd(gcd(a, b), c) != 1:
                        continue
                    r = _valuations([a, b, c], fb, p)
                    if r is not None and any(r):
                        rels.append(r)
        rows = hnf_rows(rels, k)
        if len(rows) == k:
            det = 1
            for i, r in enumerate(rows):
                det *= r[i]
            if det == seen_det:
                stable += 1
            else:
                seen_det, stable = det, 0
            if stable >= 2 or det == 1:
                break
        H += 1
        if H > 40:
            return ClassGroupResult("Inconclusive", [], ell, [], "relation rank deficient")
    rels = rows
    inv = elementary_divisors(rels, k) if k else []
    sylow = []
    for d in inv:
        e = 1
        while d % (e * ell) == 0:
            e *= ell
        if e > 1:
            sylow.append(e)
    if not sylow:
        return ClassGroupResult("Certified", inv, ell, [], "ell does not divide the relation group order")
    torsion = _ell_torsion(rels, ell, k)
    e0 = unit_scan(p, 3)
    rq = {q: [P.e if P.q == q else 0 for P in fb] for q in {P.q for P in fb}}
    for x in torsion:
        # make exponents nonnegative with (q)-relations
        x = list(x)
        for i, P in enumerate(fb):
            if x[i] < 0:
                a = -x[i]
                x = [xi + a * ri for xi, ri in zip(x, rq[P.q])]
        I = unit_ideal(p)
        for P, e in zip(fb, x):
            if e:
                I = I * P.power(e)
        if ideal_is_principal(I, e0) is not None:
            return ClassGroupResult("Inconclusive", inv, ell, sylow,
                                    "an ell-torsion relation class is principal: relations incomplete")
    return ClassGroupResult("Certified", inv, ell, sylow,
                            "every nonzero ell-torsion class tested non-principal")


def _ell_torsion(H, ell, k):
    """Nonzero vectors x with ell*x in the lattice of H, one per torsion element."""
    # left null space of H mod ell
    n = len(H)
    A = [[H[i][j] % ell for i in range(n)] for j in range(k)]   # transpose: A y = 0
    piv_cols, R = _rref_mod(A, ell, n)
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for f in free:
        y = [0] * n
        y[f] = 1
        for r, pc in zip(R, piv_cols):
            y[pc] = (-r[f]) % ell
        basis.append(y)
    out = []
    for coefs in product(range(ell), repeat=len(basis)):
        if not any(coefs):
            continue
        y = [sum(c * b[i] for c, b in zip(coefs, basis)) % ell for i in range(n)]
        x = [sum(y[i] * H[i][j] for i in range(n)) for j in range(k)]
        assert all(v % ell == 0 for v in x)
        out.append([v // ell for v in x])
    return out


def _rref_mod(A, m, ncols):
    A = [r[:] for r in A]
    piv = []
    row = 0
    for c in range(ncols):
        pr = next((r for r in range(row, len(A)) if A[r][c] % m), None)
        if pr is None:
            continue
        A[row], A[pr] = A[pr], A[row]
        inv = pow(A[row][c], -1, m)
        A[row] = [(v * inv) % m for v in A[row]]
        for r in range(len(A)):
            if r != row and A[r][c] % m:
                f = A[r][c]
                A[r] = [(a - f * b) % m for a, b in zip(A[r], A[row])]
        piv.append(c)
        row += 1
    return piv, A[:row]


def ideal_is_principal(I, e0, delta=1.0):
    """A generator of the ideal I of Z[p^(1/3)], or None.

    Any generator can be moved by a power of e0 so that log|a_1| - log N^(1/3)
    lies in [0, log e0); that strip is covered by windows of width 2*delta,
    each enumerated exactly in the weighted Minkowski lattice.
    """
    p = I.p
    N = I.norm()
    L = float(mp.log(e0.real_value()))
    basis = [RadicalElement(3, tuple(r), p) for r in I.hnf]
    cur = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    t = delta
    bits = max(e0.height_bits(), N.bit_length())
    while t - delta < L:
        with mp.workdps(int(40 + t / 1.1 + bits / 3)):
            c3 = mp.cbrt(mp.mpf(N))
            elts = [_combine(basis, c, p, 3) for c in cur]
            Br, U = lll([[x / c3 for x in r] for r in _scaled_rows(elts, mp.mpf(t), 3)])
            cur = [[sum(U[i][k] * cur[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
            for x in short_vectors(Br, _window_radius(3, delta)):
                if not any(x):
                    continue
                v = [sum(x[i] * cur[i][k] for i in range(3)) for k in range(3)]
                a = _combine(basis, v, p, 3)
                if abs(a.norm()) == N:
                    return a
        t += 2 * delta
    return None
