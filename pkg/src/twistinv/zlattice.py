"""Exact integer lattices: Hermite and Smith normal forms, kernels, intersections.

Everything here works on Python ints, so there is no overflow.  Matrices act on
row vectors: a lattice is the row span of its basis, and the kernel of ``m`` is
``{v : v @ m == 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import PreconditionError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix.  Zero-row matrices keep their column count."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"expected {self.nrows}x{self.ncols}={self.nrows * self.ncols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row {r} does not have {ncols} entries")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows(unit_rows(n), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    def row(self, i: int) -> Vector:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self) -> tuple[Vector, ...]:
        return tuple(self.row(i) for i in range(self.nrows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        cols = other.T.rows()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows()], other.ncols
        )

    def apply(self, v: Sequence[int]) -> Vector:
        """Row vector times matrix."""
        if len(v) != self.nrows:
            raise ValueError(f"vector of length {len(v)} cannot multiply a {self.nrows}-row matrix")
        return vecmat(v, self.rows(), self.ncols)

    def stack(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return IntMatrix(self.nrows + other.nrows, self.ncols, self.entries + other.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_rank stored by its row HNF basis (zero rows dropped).

    Construct through :func:`hnf` or :func:`lattice`; the basis is then
    canonical and ``==`` is lattice equality.
    """

    ambient_rank: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.basis, self.ambient_rank)

    def __contains__(self, v: Sequence[int]) -> bool:
        return contains(self, v)

    def pivots(self) -> tuple[int, ...]:
        return tuple(_leading(r) for r in self.basis)

    def is_full(self) -> bool:
        return self.rank == self.ambient_rank and all(
            r[c] == 1 for r, c in zip(self.basis, self.pivots())
        )


def unit_rows(n: int) -> list[Vector]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def vecmat(v: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> Vector:
    out = [0] * ncols
    for c, r in zip(v, rows):
        if c:
            for j, x in enumerate(r):
                out[j] += c * x
    return tuple(out)


def _leading(r: Sequence[int]) -> int:
    for j, x in enumerate(r):
        if x:
            return j
    return len(r)


def _as_rows(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None) -> tuple[list[list[int]], int]:
    if isinstance(m, IntMatrix):
        return [list(r) for r in m.rows()], m.ncols
    rows = [list(map(int, r)) for r in m]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty row list")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    return rows, ncols


def _echelon(a: list[list[int]], ncols: int, u: list[list[int]] | None = None) -> int:
    """In-place row HNF of ``a``; applies the same row ops to ``u``.  Returns the rank."""
    m = len(a)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                if u is not None:
                    u[r], u[i0] = u[i0], u[r]
            p = a[r][c]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if u is not None:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r >= m or not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return r


def hnf(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> Lattice:
    """Row Hermite normal form of the row span of ``m``.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.

    >>> hnf([[2, 0], [0, 2], [1, 1]]).basis
    ((1, 1), (0, 2))
    """
    a, n = _as_rows(m, ncols)
    r = _echelon(a, n)
    return Lattice(n, tuple(tuple(row) for row in a[:r]))


def hnf_with_transform(
    m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None
) -> tuple[Lattice, IntMatrix, int]:
    """HNF plus a unimodular ``u`` with ``u @ m`` equal to the HNF rows padded by zero rows."""
    a, n = _as_rows(m, ncols)
    u = [list(r) for r in unit_rows(len(a))]
    r = _echelon(a, n, u)
    return Lattice(n, tuple(tuple(row) for row in a[:r])), IntMatrix.from_rows(u, len(a)), r


def lattice(rows: Iterable[Sequence[int]], ambient_rank: int) -> Lattice:
    return hnf(list(rows), ambient_rank)


def zero_lattice(ambient_rank: int) -> Lattice:
    return Lattice(ambient_rank, ())


def full_lattice(ambient_rank: int) -> Lattice:
    return Lattice(ambient_rank, tuple(unit_rows(ambient_rank)))


def rank(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return hnf(m, ncols).rank


def coordinates(l: Lattice, v: Sequence[int]) -> Vector | None:
    """Integer ``c`` with ``c @ l.basis == v``, or ``None`` if ``v`` is not in ``l``."""
    if len(v) != l.ambient_rank:
        raise ValueError(f"vector length {len(v)} != ambient rank {l.ambient_rank}")
    rest = list(v)
    coeffs = []
    for row in l.basis:
        c = _leading(row)
        if any(rest[j] for j in range(c)):
            return None
        q, rem = divmod(rest[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            rest = [x - q * y for x, y in zip(rest, row)]
    if any(rest):
        return None
    return tuple(coeffs)


def contains(l: Lattice, v: Sequence[int]) -> bool:
    return coordinates(l, v) is not None


def reduce_mod(l: Lattice, v: Sequence[int]) -> Vector:
    """Canonical representative of ``v + l``: each pivot coordinate lands in ``[0, pivot)``."""
    if len(v) != l.ambient_rank:
        raise ValueError(f"vector length {len(v)} != ambient rank {l.ambient_rank}")
    out = list(v)
    for row in l.basis:
        c = _leading(row)
        q = out[c] // row[c]
        if q:
            out = [x - q * y for x, y in zip(out, row)]
    return tuple(out)


def kernel_basis(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> Lattice:
    """Z-basis (in HNF) of the left kernel ``{v : v @ m == 0}``."""
    a, n = _as_rows(m, ncols)
    nrows = len(a)
    _, u, r = hnf_with_transform(a, n)
    return hnf(u.rows()[r:], nrows)


def intersect(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_rank != b.ambient_rank:
        raise PreconditionError(
            f"cannot intersect lattices of ambient ranks {a.ambient_rank} and {b.ambient_rank}"
        )
    n = a.ambient_rank
    if not a.basis or not b.basis:
        return zero_lattice(n)
    stacked = list(a.basis) + [tuple(-x for x in r) for r in b.basis]
    ker = kernel_basis(stacked, n)
    return hnf([vecmat(k[: a.rank], a.basis, n) for k in ker.basis], n)


def join(a: Lattice, b: Lattice) -> Lattice:
    """Smallest lattice containing both (sum of subgroups)."""
    if a.ambient_rank != b.ambient_rank:
        raise PreconditionError("ambient ranks differ")
    return hnf(list(a.basis) + list(b.basis), a.ambient_rank)


def is_sublattice(a: Lattice, b: Lattice) -> bool:
    """``a`` contained in ``b``."""
    return a.ambient_rank == b.ambient_rank and all(contains(b, r) for r in a.basis)


def snf(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns ``(factors, left, right)`` with ``left @ m @ right`` diagonal, the
    diagonal being ``factors`` (length ``min(rows, cols)``, nonnegative, each
    dividing the next, zeros last).
    """
    a, n = _as_rows(m, ncols)
    nr = len(a)
    left = [list(r) for r in unit_rows(nr)]
    right = [list(r) for r in unit_rows(n)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in a:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    size = min(nr, n)
    for t in range(size):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, n) if a[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    factors = [a[i][i] for i in range(size)]
    return factors, IntMatrix.from_rows(left, nr), IntMatrix.from_rows(right, n)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def quotient_invariants(big: Lattice, small: Lattice) -> tuple[int, ...]:
    """Invariant factors of ``big / small`` for ``small`` inside ``big``.

    Trivial factors are dropped; each free summand contributes a 0, listed after
    the torsion factors ``d1 | d2 | ...``.
    """
    if not is_sublattice(small, big):
        raise PreconditionError("quotient requires small lattice contained in big lattice")
    k = big.rank
    if k == 0:
        return ()
    coords = [coordinates(big, r) for r in small.basis]
    if coords:
        factors, _, _ = snf(coords, k)
    else:
        factors = []
    factors = list(factors) + [0] * (k - len(factors))
    torsion = sorted(f for f in factors if f > 1)
    free = [0] * sum(1 for f in factors if f == 0)
    return tuple(torsion + free)


def saturation_index(m: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, list[int]]:
    """Rank of ``m`` and its nonzero Smith factors (all ones iff the row span is saturated)."""
    factors, _, _ = snf(m, ncols)
    nonzero = [f for f in factors if f]
    return len(nonzero), nonzero


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
