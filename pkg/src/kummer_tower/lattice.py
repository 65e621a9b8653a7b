"""Integer and real lattice utilities: HNF, elementary divisors, LLL, enumeration."""
from math import gcd

import mpmath as mp
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def hnf_rows(rows, d):
    """Upper-triangular Hermite basis of the row lattice spanned by `rows`.

    Rows may be dependent; the result has one row per pivot column.
    """
    rows = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(d):
        piv = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            a = piv[0]
            nxt = [a]
            for r in piv[1:]:
                q = r[col] // a[col]
                r2 = [x - q * y for x, y in zip(r, a)]
                (nxt if r2[col] else rest).append(r2)
            piv = nxt
        if piv:
            a = piv[0]
            if a[col] < 0:
                a = [-x for x in a]
            basis.append(a)
        rows = rest
    # reduce entries above pivots
    for i in range(len(basis)):
        c = next(j for j, x in enumerate(basis[i]) if x)
        for k in range(i):
            q = basis[k][c] // basis[i][c]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return basis


def elementary_divisors(rows, d):
    """Invariant factors of Z^d / <rows>, dropping 1s; 0 marks a free factor."""
    if d == 0:
        return []
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [0] * d
    M = Matrix(rows)
    inv = [int(x) for x in invariant_factors(M, domain=ZZ)]
    inv = [abs(x) for x in inv]
    free = d - len([x for x in inv if x != 0])
    return [x for x in inv if x not in (0, 1)] + [0] * free


def subgroup_order_mod(rows, n, r):
    """Order of the subgroup of (Z/n)^r generated by `rows`."""
    gens = [[x % n for x in row] for row in rows]
    gens += [[n if i == j else 0 for j in range(r)] for i in range(r)]
    H = hnf_rows(gens, r)
    det = 1
    for i, row in enumerate(H):
        det *= row[i]
    return n ** r // det


# ---------------------------------------------------------------- real lattices

def _dot(u, v):
    return mp.fsum(a * b for a, b in zip(u, v))


def lll(B, delta=0.99):
    """LLL-reduce the rows of B (mpmath reals).  Returns (reduced, U) with reduced = U*B."""
    n = len(B)
    B = [list(b) for b in B]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def gso():
        Bs, Bn = [], []
        mu = [[mp.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            v = list(B[i])
            for j in range(i):
                mu[i][j] = _dot(B[i], Bs[j]) / Bn[j]
                v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
            Bs.append(v)
            Bn.append(_dot(v, v))
        return mu, Bn

    mu, Bn = gso()
    k = 1
    while k < n:
        changed = False
        for j in range(k - 1, -1, -1):
            q = int(mp.nint(mu[k][j]))
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                U[k] = [a - q * b for a, b in zip(U[k], U[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
                changed = True
        if changed:
            mu, Bn = gso()
        if Bn[k] >= (delta - mu[k][k - 1] ** 2) * Bn[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            mu, Bn = gso()
            k = max(k - 1, 1)
    return B, U


def short_vectors(B, R2):
    """All integer x with |x*B|^2 <= R2 (Fincke-Pohst).  B should be LLL-reduced."""
    n = len(B)
    G = [[_dot(B[i], B[j]) for j in range(n)] for i in range(n)]
    Q = [[mp.mpf(0)] * n for _ in range(n)]
    A = [row[:] for row in G]
    for i in range(n):
        Q[i][i] = A[i][i]
        for j in range(i + 1, n):
            Q[i][j] = A[i][j] / A[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= Q[i][j] * Q[i][k] * Q[i][i]
    out = []
    x = [0] * n

    def rec(i, rem):
        c = -mp.fsum(Q[i][j] * x[j] for j in range(i + 1, n))
        r = mp.sqrt(max(rem, 0) / Q[i][i])
        lo, hi = int(mp.ceil(c - r)), int(mp.floor(c + r))
        for xi in range(lo, hi + 1):
            x[i] = xi
            t = Q[i][i] * (xi - c) ** 2
            if i == 0:
                out.append(list(x))
            else:
                rec(i - 1, rem - t)
        x[i] = 0

    rec(n - 1, R2)
    return out


def lcm(a, b):
    return a // gcd(a, b) * b
