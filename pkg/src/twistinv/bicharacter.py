"""Alternating bicharacters on Z^n with values in a scalar context.

A bicharacter is determined by its values on pairs of standard basis vectors,
stored as an n x n table of exponent vectors.  Values extend bilinearly.
Cocycle classes on a free abelian group are represented by their alternating
bicharacter ``c#(s, t) = c(s, t) / c(t, s)``; cohomologous cocycles give the
same ``c#`` and isomorphic twists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from . import zlattice as zl
from .errors import PreconditionError, SchemaError
from .scalargroup import (
    Embedding,
    ScalarContext,
    ScalarElement,
    ScalarSubgroup,
    adjoin_square_roots,
    generated_subgroup,
)
from .zlattice import IntMatrix, Lattice, Vector


def _add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


@dataclass(frozen=True)
class Bicharacter:
    ctx: ScalarContext
    n: int
    entries: tuple[tuple[Vector, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise SchemaError(f"bicharacter table must be {self.n}x{self.n}")
        canon = tuple(tuple(self.ctx.canonical(e) for e in row) for row in self.entries)
        object.__setattr__(self, "entries", canon)
        for i in range(self.n):
            if any(canon[i][i]):
                raise SchemaError(f"diagonal entry ({i},{i}) is not 1; bicharacter is not alternating")
            for j in range(i + 1, self.n):
                if self.ctx.canonical(_scale(-1, canon[i][j])) != canon[j][i]:
                    raise SchemaError(f"entries ({i},{j}) and ({j},{i}) are not mutually inverse")

    @classmethod
    def trivial(cls, ctx: ScalarContext, n: int) -> Bicharacter:
        z = (0,) * ctx.m
        return cls(ctx, n, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_upper(cls, ctx: ScalarContext, n: int, upper: Mapping[tuple[int, int], ScalarElement | Sequence[int]]) -> Bicharacter:
        """Build from values on pairs ``i < j``; missing pairs are 1."""
        z = (0,) * ctx.m
        table = [[z] * n for _ in range(n)]
        for (i, j), val in upper.items():
            if not 0 <= i < j < n:
                raise SchemaError(f"upper-triangular index ({i},{j}) out of range for n={n}")
            e = _exps(ctx, val)
            table[i][j] = e
            table[j][i] = _scale(-1, e)
        return cls(ctx, n, tuple(tuple(r) for r in table))

    @classmethod
    def from_function(cls, ctx: ScalarContext, n: int, f: Callable[[int, int], ScalarElement | Sequence[int]]) -> Bicharacter:
        """Values ``f(i, j)`` for ``i < j``."""
        return cls.from_upper(ctx, n, {(i, j): f(i, j) for i in range(n) for j in range(i + 1, n)})

    def value(self, i: int, j: int) -> ScalarElement:
        return self.ctx.element(self.entries[i][j])

    def upper(self) -> dict[tuple[int, int], Vector]:
        return {(i, j): self.entries[i][j] for i in range(self.n) for j in range(i + 1, self.n)}

    def component(self, p: int) -> list[list[int]]:
        """Integer skew matrix of the exponents of parameter ``p``."""
        return [[self.entries[i][j][p] for j in range(self.n)] for i in range(self.n)]

    def __mul__(self, other: Bicharacter) -> Bicharacter:
        _same(self, other)
        return Bicharacter(self.ctx, self.n, tuple(
            tuple(_add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
        ))

    def inverse(self) -> Bicharacter:
        return Bicharacter(self.ctx, self.n, tuple(tuple(_scale(-1, a) for a in r) for r in self.entries))

    def pullback(self, u: IntMatrix) -> Bicharacter:
        """``(a, b) -> chi(a @ u, b @ u)`` for ``u`` with ``n`` columns."""
        if u.ncols != self.n:
            raise PreconditionError(f"pullback matrix has {u.ncols} columns, bicharacter rank is {self.n}")
        rows = u.rows()
        return Bicharacter.from_function(
            self.ctx, u.nrows, lambda i, j: evaluate(self, rows[i], rows[j]).exponents
        )

    def extend(self, s: int) -> Bicharacter:
        """Append ``s`` coordinates on which the bicharacter is trivial."""
        z = (0,) * self.ctx.m
        n = self.n + s
        return Bicharacter(self.ctx, n, tuple(
            tuple(self.entries[i][j] if i < self.n and j < self.n else z for j in range(n))
            for i in range(n)
        ))

    def embed(self, emb: Embedding) -> Bicharacter:
        return Bicharacter(emb.target, self.n, tuple(
            tuple(_scale(emb.factor, e) for e in r) for r in self.entries
        ))

    def values(self) -> list[ScalarElement]:
        return [self.value(i, j) for i in range(self.n) for j in range(self.n)]


def _exps(ctx: ScalarContext, val: ScalarElement | Sequence[int]) -> Vector:
    if isinstance(val, ScalarElement):
        if val.ctx != ctx:
            raise PreconditionError("value lives in a different scalar context")
        return val.exponents
    return tuple(int(x) for x in val)


def _same(a: Bicharacter, b: Bicharacter) -> None:
    if a.ctx != b.ctx:
        raise PreconditionError("bicharacters live in different scalar contexts")
    if a.n != b.n:
        raise PreconditionError(f"bicharacter ranks differ ({a.n} vs {b.n})")


@dataclass(frozen=True)
class CocycleClass:
    """Cohomology class of a 2-cocycle on Z^r, held as its alternating bicharacter ``sharp``.

    ``representative``, when present, is an alternating bicharacter ``b`` with
    ``b^2 = sharp`` (possibly over a refined context), which is itself a cocycle
    in the class.
    """

    sharp: Bicharacter
    representative: Bicharacter | None = None
    embedding: Embedding | None = None

    @property
    def rank(self) -> int:
        return self.sharp.n

    @classmethod
    def trivial(cls, ctx: ScalarContext, r: int) -> CocycleClass:
        return cls(Bicharacter.trivial(ctx, r))

    def cocycle(self, s: Sequence[int], t: Sequence[int]) -> ScalarElement:
        """The upper-triangular cocycle ``prod_{i<j} sharp_ij^(s_i t_j)`` in this class."""
        if len(s) != self.rank or len(t) != self.rank:
            raise PreconditionError("cocycle arguments have the wrong length")
        ctx = self.sharp.ctx
        out = [0] * ctx.m
        for i in range(self.rank):
            if not s[i]:
                continue
            for j in range(i + 1, self.rank):
                k = s[i] * t[j]
                if k:
                    e = self.sharp.entries[i][j]
                    for p in range(ctx.m):
                        out[p] += k * e[p]
        return ctx.element(out)


def evaluate(chi: Bicharacter, a: Sequence[int], b: Sequence[int]) -> ScalarElement:
    """``prod chi(e_i, e_j)^(a_i b_j)``."""
    if len(a) != chi.n or len(b) != chi.n:
        raise PreconditionError(f"vectors must have length {chi.n}")
    out = [0] * chi.ctx.m
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = chi.entries[i]
        for j, bj in enumerate(b):
            k = ai * bj
            if k:
                e = row[j]
                for p in range(chi.ctx.m):
                    out[p] += k * e[p]
    return chi.ctx.element(out)


def twist_bicharacter(chi: Bicharacter, phi: IntMatrix, csharp: CocycleClass) -> Bicharacter:
    """``chi_c(e_i, e_j) = chi(e_i, e_j) * c#(phi e_i, phi e_j)``."""
    if phi.nrows != chi.n:
        raise PreconditionError(f"grading map has {phi.nrows} rows, bicharacter rank is {chi.n}")
    if phi.ncols != csharp.rank:
        raise PreconditionError(f"cocycle class has rank {csharp.rank}, grading group has rank {phi.ncols}")
    if csharp.sharp.ctx != chi.ctx:
        raise PreconditionError("cocycle class lives in a different scalar context")
    return chi * csharp.sharp.pullback(phi)


def image_subgroup(chi: Bicharacter, sub: Lattice) -> ScalarSubgroup:
    """``< chi(sub, Z^n) >`` generated by ``chi(b, e_j)`` over basis rows ``b`` of ``sub``."""
    if sub.ambient_rank != chi.n:
        raise PreconditionError(f"sublattice rank {sub.ambient_rank} != bicharacter rank {chi.n}")
    units = zl.unit_rows(chi.n)
    return generated_subgroup(chi.ctx, [evaluate(chi, b, e) for b in sub.basis for e in units])


def values_subgroup(chi: Bicharacter) -> ScalarSubgroup:
    """``< chi(e_i, e_j) >``."""
    return generated_subgroup(chi.ctx, chi.values())


def cocycle_from_skew_ratios(ratios: Bicharacter) -> CocycleClass:
    """Class whose ``sharp`` is ``ratios``, with a square-root representative.

    The representative ``b`` satisfies ``b(e_i, e_j)^2 = ratios[i][j]``.  When
    some canonical exponent is odd the scalar context is refined by
    :func:`adjoin_square_roots` and ``embedding`` records the map.
    """
    ctx = ratios.ctx
    odd = any(x % 2 for row in ratios.entries for e in row for x in e)
    upper = ratios.upper()
    if not odd:
        rep = Bicharacter.from_upper(ctx, ratios.n, {ij: tuple(x // 2 for x in e) for ij, e in upper.items()})
        return CocycleClass(ratios, rep, None)
    refined, emb = adjoin_square_roots(ctx)
    # doubling then halving: the refined exponent of sqrt(x) is the original exponent of x
    rep = Bicharacter.from_upper(refined, ratios.n, upper)
    return CocycleClass(ratios, rep, emb)


def square(b: Bicharacter) -> Bicharacter:
    return b * b


def verify_cocycle_identity(table: Mapping[tuple[Vector, Vector], ScalarElement | Sequence[int]]) -> bool:
    """Check ``c(s, t+u) c(t, u) = c(s+t, u) c(s, t)`` on every in-grid triple.

    ``table`` maps pairs of grid points to values and must contain every pair
    of grid points; a triple is in-grid when ``s+t`` and ``t+u`` are grid points.
    """
    grid = sorted({s for s, _ in table} | {t for _, t in table})
    for s in grid:
        for t in grid:
            if (s, t) not in table:
                raise PreconditionError(f"table is not closed: missing pair {s}, {t}")
    gset = set(grid)
    ctx = next((v.ctx for v in table.values() if isinstance(v, ScalarElement)), None)

    def val(s: Vector, t: Vector) -> Vector:
        v = table[(s, t)]
        return v.exponents if isinstance(v, ScalarElement) else tuple(v)

    def canon(v: Vector) -> Vector:
        return ctx.canonical(v) if ctx is not None else v

    for s, t, u in itertools.product(grid, repeat=3):
        st, tu = _add(s, t), _add(t, u)
        if st not in gset or tu not in gset:
            continue
        lhs = _add(val(s, tu), val(t, u))
        rhs = _add(val(st, u), val(s, t))
        if canon(lhs) != canon(rhs):
            return False
    return True


def cocycle_table(c: Callable[[Vector, Vector], ScalarElement], points: Iterable[Vector]) -> dict[tuple[Vector, Vector], Vector]:
    """Tabulate canonical exponents of ``c`` on all pairs of ``points``."""
    pts = list(points)
    return {(s, t): c(s, t).canonical for s in pts for t in pts}
