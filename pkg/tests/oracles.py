"""Independent reference computations used by the tests.

Nothing here calls into the package's lattice code: ranks and determinants
are computed over the rationals with ``fractions.Fraction``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def rational_rank(rows, ncols):
    a = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    while rank < len(a) and col < ncols:
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def rational_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    assert d.denominator == 1
    return int(d)


def determinantal_divisors(rows, ncols):
    """``D_k`` = gcd of all k x k minors, for k = 1..min(rows, cols)."""
    out = []
    for k in range(1, min(len(rows), ncols) + 1):
        g = 0
        for ri in itertools.combinations(range(len(rows)), k):
            for ci in itertools.combinations(range(ncols), k):
                g = gcd(g, rational_det([[rows[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def box(n, r):
    return list(itertools.product(range(-r, r + 1), repeat=n))


def in_rational_span(rows, v, ncols):
    return rational_rank(list(rows) + [v], ncols) == rational_rank(rows, ncols)
