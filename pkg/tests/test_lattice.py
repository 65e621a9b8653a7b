from itertools import product

from hypothesis import given, settings, strategies as st
from sympy import Matrix

from kummer_tower.lattice import elementary_divisors, hnf_rows, lll, short_vectors, subgroup_order_mod

small_rows = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4)


@given(small_rows)
@settings(max_examples=200)
def test_hnf_spans_same_lattice(rows):
    H = hnf_rows(rows, 3)
    # same determinant of the Gram matrix up to rank; compare via index in Z^3 when full rank
    r = Matrix(rows).rank() if any(any(x) for x in rows) else 0
    assert len(H) == r
    for i, row in enumerate(H):
        c = next(j for j, x in enumerate(row) if x)
        assert row[c] > 0
        assert all(H[k][c] == 0 or 0 <= H[k][c] < row[c] for k in range(i))


@given(small_rows, st.sampled_from([2, 3, 4, 8, 9]))
@settings(max_examples=200)
def test_subgroup_order_brute_force(rows, n):
    span = {tuple([0] * 3)}
    frontier = list(span)
    gens = [tuple(x % n for x in r) for r in rows]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = tuple((a + b) % n for a, b in zip(v, g))
            if w not in span:
                span.add(w)
                frontier.append(w)
    assert subgroup_order_mod(rows, n, 3) == len(span)


def test_elementary_divisors():
    assert elementary_divisors([[2, 0], [0, 4]], 2) == [2, 4]
    assert elementary_divisors([[2, 4]], 2) == [2, 0]
    assert elementary_divisors([], 2) == [0, 0]
    assert elementary_divisors([[1, 0], [0, 6]], 2) == [6]


def test_lll_and_short_vectors():
    B = [[1, 0, 0, 1345], [0, 1, 0, 35], [0, 0, 1, 154]]
    R, U = lll(B)
    assert [[sum(U[i][k] * B[k][j] for k in range(3)) for j in range(4)] for i in range(3)] == R
    norms = sorted(sum(x * x for x in r) for r in R)
    assert norms[0] < 1345 ** 2
    vecs = short_vectors(R, 100)
    for x in vecs:
        v = [sum(x[i] * R[i][j] for i in range(3)) for j in range(4)]
        assert sum(t * t for t in v) <= 100 + 1e-9
    brute = [c for c in product(range(-3, 4), repeat=3)
             if sum(sum(c[i] * R[i][j] for i in range(3)) ** 2 for j in range(4)) <= 100]
    assert len(brute) <= len(vecs)
