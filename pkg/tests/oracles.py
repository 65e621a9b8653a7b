"""Independent reference computations shared by the unit and acceptance tests."""
import math
from math import gcd

import mpmath
from sympy import isprime, n_order
from sympy.functions.combinatorial.numbers import kronecker_symbol

from kummer_tower.exact_arith import build_residue_field
from kummer_tower.quad_field import discriminant_of, is_squarefree


def squarefree_seeds(max_disc):
    for d in range(-max_disc, max_disc + 1):
        if d in (0, 1) or not is_squarefree(d):
            continue
        if abs(discriminant_of(d)) <= max_disc:
            yield d


def brute_forms_negative(D):
    """Reduced positive definite forms of discriminant D, enumerated directly."""
    count = 0
    for a in range(1, int(math.isqrt(-D // 3)) + 2):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                count += 1
    return count


def analytic_class_number(D, eps=None):
    """Dirichlet's class number formula for a fundamental discriminant D."""
    if D < 0:
        w = {-3: 6, -4: 4}.get(D, 2)
        s = sum(int(kronecker_symbol(D, a)) * a for a in range(1, -D))
        return -w * s // (2 * -D)
    s = 0.0
    for a in range(1, D):
        k = int(kronecker_symbol(D, a))
        if k:
            s += k * math.log(math.sin(math.pi * a / D))
    mpmath.mp.dps = 30
    reg = mpmath.log(mpmath.mpf(eps.X) / 2 + mpmath.mpf(eps.Y) / 2 * mpmath.sqrt(eps.d))
    return int(round(-s / (2 * float(reg))))


def fields_up_to(max_q, orders):
    for N in orders:
        for p in range(2, max_q + 1):
            if not isprime(p) or N % p == 0:
                continue
            if p ** n_order(p, N) <= max_q:
                yield build_residue_field(p, N)


def nth_power_oracle(F, n):
    """n-th powers computed by brute force, independent of unit_character."""
    nonzero = [u for u in F.elements() if any(u)]
    return {F.pow(u, n) for u in nonzero}, nonzero
