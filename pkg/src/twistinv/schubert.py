"""Quantum Schubert cells from symmetrizable Cartan data and Weyl words.

Roots are integer vectors in simple-root coordinates.  The symmetric form is
normalized so that the short simple roots of every connected component have
squared length 2.  Weyl words are sequences of 0-based letters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import zlattice as zl
from .bicharacter import Bicharacter, evaluate
from .cgl import CglDescriptor, Witness, degree_map_hmax, predecessor, tw_cgl, tw_general, tw_symmetric
from .cluster import GradingMap
from .errors import CrossCheckError, PreconditionError, SchemaError
from .scalargroup import ScalarContext, ScalarSubgroup, generated_subgroup
from .zlattice import IntMatrix, Vector


@dataclass(frozen=True)
class CartanData:
    """Generalized Cartan matrix ``a`` with ``s_i(alpha_j) = alpha_j - a[i][j] alpha_i``."""

    gcm: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        a = tuple(tuple(int(x) for x in row) for row in self.gcm)
        object.__setattr__(self, "gcm", a)
        r = len(a)
        if any(len(row) != r for row in a):
            raise SchemaError("Cartan matrix must be square")
        for i in range(r):
            if a[i][i] != 2:
                raise SchemaError(f"diagonal entry a[{i}][{i}] must be 2")
            for j in range(r):
                if i != j and a[i][j] > 0:
                    raise SchemaError(f"off-diagonal entry a[{i}][{j}] must be <= 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise SchemaError(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
        self.norms  # noqa: B018  (validates symmetrizability)

    @property
    def rank(self) -> int:
        return len(self.gcm)

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        """``d`` with ``d_i a_ij = d_j a_ji``, smallest entry 1 on each connected component."""
        a, r = self.gcm, self.rank
        d: list[Fraction | None] = [None] * r
        for start in range(r):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            comp, stack = [start], [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if j != i and a[i][j]:
                        val = d[i] * a[i][j] / a[j][i]
                        if d[j] is None:
                            d[j] = val
                            comp.append(j)
                            stack.append(j)
                        elif d[j] != val:
                            raise SchemaError("Cartan matrix is not symmetrizable")
            low = min(d[i] for i in comp)
            for i in comp:
                d[i] = d[i] / low
        return tuple(d)  # type: ignore[arg-type]

    @cached_property
    def norms(self) -> tuple[int, ...]:
        """Squared lengths ``||alpha_i||^2 = 2 d_i``."""
        out = []
        for i, di in enumerate(self.symmetrizer):
            v = 2 * di
            if v.denominator != 1:
                raise SchemaError(f"squared length of alpha_{i} is {v}, not an integer")
            out.append(int(v))
        return tuple(out)

    def form(self, u: Sequence[int], v: Sequence[int]) -> int:
        """Invariant symmetric form ``(alpha_i, alpha_j) = (||alpha_i||^2 / 2) a_ij``."""
        total = 0
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    total += ui * vj * self.norms[i] * self.gcm[i][j]
        if total % 2:
            raise CrossCheckError("symmetric form took a non-integral value")
        return total // 2

    def reflect(self, i: int, v: Sequence[int]) -> Vector:
        pairing = sum(vj * self.gcm[i][j] for j, vj in enumerate(v))
        out = list(v)
        out[i] -= pairing
        return tuple(out)

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))


def _euclid_gcm(roots: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    def dot(u, v):
        return sum(Fraction(a) * Fraction(b) for a, b in zip(u, v))

    out = []
    for ai in roots:
        row = []
        for aj in roots:
            val = 2 * dot(ai, aj) / dot(ai, ai)
            assert val.denominator == 1
            row.append(int(val))
        out.append(row)
    return out


def _unit(n: int, i: int, c: Fraction | int = 1) -> list[Fraction]:
    return [Fraction(c) if j == i else Fraction(0) for j in range(n)]


def _diff(n: int, i: int, j: int) -> list[Fraction]:
    v = _unit(n, i)
    v[j] -= 1
    return v


def cartan_type(kind: str) -> CartanData:
    """Finite types ``A_n, B_n, C_n, D_n, G2, F4`` with Bourbaki numbering, e.g. ``"B2"``."""
    kind = kind.strip().upper().replace("_", "")
    if not kind or not kind[1:].isdigit():
        raise SchemaError(f"unknown Cartan type {kind!r}")
    letter, n = kind[0], int(kind[1:])
    if letter == "A" and n >= 1:
        roots = [_diff(n + 1, i, i + 1) for i in range(n)]
    elif letter == "B" and n >= 2:
        roots = [_diff(n, i, i + 1) for i in range(n - 1)] + [_unit(n, n - 1)]
    elif letter == "C" and n >= 2:
        roots = [_diff(n, i, i + 1) for i in range(n - 1)] + [_unit(n, n - 1, 2)]
    elif letter == "D" and n >= 3:
        last = _unit(n, n - 2)
        last[n - 1] += 1
        roots = [_diff(n, i, i + 1) for i in range(n - 1)] + [last]
    elif kind == "G2":
        roots = [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    elif kind == "F4":
        h = Fraction(1, 2)
        roots = [_diff(4, 1, 2), _diff(4, 2, 3), _unit(4, 3), [h, -h, -h, -h]]
    else:
        raise SchemaError(f"unknown Cartan type {kind!r}; supported: A_n, B_n, C_n, D_n, G2, F4")
    return CartanData(tuple(tuple(r) for r in _euclid_gcm(roots)), kind)


def _check_word(c: CartanData, w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(i) for i in w)
    for i in w:
        if not 0 <= i < c.rank:
            raise SchemaError(f"letter {i} out of range for rank {c.rank}")
    return w


def roots_beta(c: CartanData, w: Sequence[int]) -> list[Vector]:
    """``beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})``."""
    w = _check_word(c, w)
    out = []
    for k, i in enumerate(w):
        v = c.simple_root(i)
        for j in reversed(w[:k]):
            v = c.reflect(j, v)
        out.append(v)
    return out


def is_reduced(c: CartanData, w: Sequence[int]) -> bool:
    betas = roots_beta(c, w)
    return all(all(x >= 0 for x in b) for b in betas) and len(set(betas)) == len(betas)


def reduced_words(c: CartanData, max_length: int) -> Iterator[tuple[int, ...]]:
    """All reduced words of length ``1 .. max_length``, in lexicographic order by length."""

    def extend(word: tuple[int, ...], acting: list[Vector]) -> Iterator[tuple[int, ...]]:
        # acting[j] = w(alpha_j); w s_i is reduced iff w(alpha_i) > 0
        if len(word) == max_length:
            return
        for i in range(c.rank):
            if all(x >= 0 for x in acting[i]):
                nw = word + (i,)
                yield nw
                na = [_apply_word_then(c, acting, i, j) for j in range(c.rank)]
                yield from extend(nw, na)

    start = [c.simple_root(j) for j in range(c.rank)]
    words = sorted(extend((), start), key=lambda t: (len(t), t))
    yield from words


def _apply_word_then(c: CartanData, acting: list[Vector], i: int, j: int) -> Vector:
    # (w s_i)(alpha_j) = w(alpha_j - a_ij alpha_i)
    a = c.gcm[i][j]
    return tuple(x - a * y for x, y in zip(acting[j], acting[i]))


@dataclass(frozen=True)
class SchubertInvariants:
    word: tuple[int, ...]
    betas: tuple[Vector, ...]
    lambda_exponents: tuple[int, ...]
    support: tuple[int, ...]
    d_of_w: int
    tw: ScalarSubgroup
    tw_hmax: ScalarSubgroup
    tw_closed_form: ScalarSubgroup
    repeated_letters: tuple[int, ...]

    @property
    def closed_form_agrees(self) -> bool:
        return self.tw == self.tw_closed_form


Q_CONTEXT = ScalarContext.free("q")


def standard_lambda_matrix(c: CartanData, w: Sequence[int], ctx: ScalarContext = Q_CONTEXT) -> Bicharacter:
    """Leading commutation scalars of the root vectors: ``lam[k][j] = q^-(beta_k, beta_j)`` for ``j < k``."""
    betas = roots_beta(c, w)
    q = ctx.param("q")
    return Bicharacter.from_function(ctx, len(betas), lambda j, k: q ** c.form(betas[k], betas[j]))


def witness_candidates(betas: Sequence[Vector], k: int, pk: int) -> Iterator[Witness]:
    """All ``m >= 0`` on ``beta_{pk+1} .. beta_{k-1}`` with ``sum m_i beta_i = beta_k + beta_{pk}``.

    Yielded in lexicographic order, largest exponents on the earliest roots first.
    """
    target = tuple(a + b for a, b in zip(betas[k], betas[pk]))
    idx = list(range(pk + 1, k))

    def search(pos: int, rem: tuple[int, ...]) -> Iterator[list[int]]:
        if not any(rem):
            yield [0] * (len(idx) - pos)
            return
        if pos == len(idx):
            return
        b = betas[idx[pos]]
        cap = min((r // x for r, x in zip(rem, b) if x > 0), default=0)
        for t in range(cap, -1, -1):
            nrem = tuple(r - t * x for r, x in zip(rem, b))
            if any(x < 0 for x in nrem):
                continue
            for rest in search(pos + 1, nrem):
                yield [t] + rest

    for found in search(0, target):
        m = [0] * k
        for i, t in zip(idx, found):
            m[i] = t
        yield Witness(pk, tuple(m))


def find_witness(c: CartanData, betas: Sequence[Vector], k: int, pk: int, lam: Bicharacter | None = None) -> Witness:
    """A degree-compatible witness for position ``k`` with predecessor ``pk``.

    With ``lam`` given, the first candidate whose kernel vector ``b_k`` pairs
    trivially with every ``e_j`` strictly between ``pk`` and ``k`` is chosen
    (the shape a symmetric extension requires); otherwise the first candidate.
    """
    first = None
    for cand in witness_candidates(betas, k, pk):
        if lam is None:
            return cand
        first = first or cand
        b = [0] * len(betas)
        b[k] += 1
        b[pk] += 1
        for i, mi in enumerate(cand.m):
            b[i] -= mi
        units = zl.unit_rows(len(betas))
        if all(evaluate(lam, b, units[j]).is_one() for j in range(pk + 1, k)):
            return cand
    if first is None:
        raise PreconditionError(
            f"no monomial between positions {pk} and {k} has degree beta_{k} + beta_{pk}"
        )
    return first


def q_grading(c: CartanData, w: Sequence[int]) -> GradingMap:
    """Root-lattice grading ``e_k -> beta_k``."""
    return GradingMap(IntMatrix.from_rows(roots_beta(c, w), c.rank))


def to_cgl(
    c: CartanData,
    w: Sequence[int],
    lambda_entries: Bicharacter | None = None,
    witnesses: dict[int, Witness] | None = None,
    *,
    grading: str = "Q",
) -> CglDescriptor:
    """Symmetric CGL descriptor of the Schubert cell, generators in the order of ``w``.

    ``lambda_entries`` defaults to :func:`standard_lambda_matrix`; witnesses
    default to :func:`find_witness`.  ``grading`` is ``"Q"`` (root lattice) or
    ``"hmax"``.
    """
    w = _check_word(c, w)
    if not is_reduced(c, w):
        raise PreconditionError(f"word {list(w)} is not reduced")
    lam = lambda_entries if lambda_entries is not None else standard_lambda_matrix(c, w)
    if lam.n != len(w):
        raise SchemaError(f"lambda matrix has rank {lam.n}, word has length {len(w)}")
    ctx = lam.ctx
    q = ctx.param("q")
    betas = roots_beta(c, w)
    p, _ = predecessor(w)
    if witnesses is None:
        witnesses = {k: find_witness(c, betas, k, pk, lam) for k, pk in enumerate(p) if pk is not None}
    lambda_k = {k: q ** -c.norms[w[k]] for k in witnesses}
    pi = None
    if grading == "Q":
        pi = q_grading(c, w)
    elif grading != "hmax":
        raise SchemaError(f"unknown grading {grading!r}")
    name = c.name or "g"
    label = f"U_q^-[{name}; {','.join(str(i + 1) for i in w)}]"
    return CglDescriptor(ctx, lam, w, witnesses, lambda_k, pi, True, label)


def d_of_w(c: CartanData, w: Sequence[int]) -> int:
    letters = sorted(set(_check_word(c, w)))
    return math.gcd(*(c.norms[i] for i in letters)) if letters else 0


def schubert_invariants(c: CartanData, w: Sequence[int]) -> SchubertInvariants:
    """Scalars, support, ``d(w)`` and the twist invariant of the Schubert cell.

    ``tw`` is computed from the CGL presentation under the root-lattice
    grading; ``tw_hmax`` under the maximal-torus grading.  ``tw_closed_form``
    is ``<q^d(w)>``.  Generators of ``tw`` come only from letters occurring at
    least twice, so the two agree exactly when every support letter repeats or
    the gcd over repeated letters already equals ``d(w)``.
    """
    w = _check_word(c, w)
    if not is_reduced(c, w):
        raise PreconditionError(f"word {[i + 1 for i in w]} is not reduced")
    betas = roots_beta(c, w)
    for k, (i, b) in enumerate(zip(w, betas)):
        if c.form(b, b) != c.norms[i]:
            raise CrossCheckError(f"||beta_{k}||^2 = {c.form(b, b)} differs from ||alpha_{i}||^2 = {c.norms[i]}")
    d = to_cgl(c, w)
    tw = tw_cgl(d)
    if tw != tw_symmetric(d):
        raise CrossCheckError("general and symmetric twist formulas disagree")
    hmax = CglDescriptor(d.ctx, d.lam, d.eta, d.delta_witness, d.lambda_k, None, True, d.label)
    tw_h = tw_general(hmax, degree_map_hmax(hmax))
    dw = d_of_w(c, w)
    q = Q_CONTEXT.param("q")
    closed = generated_subgroup(Q_CONTEXT, [q ** dw])
    counts = {i: w.count(i) for i in set(w)}
    return SchubertInvariants(
        word=w,
        betas=tuple(betas),
        lambda_exponents=tuple(-c.norms[i] for i in w),
        support=tuple(sorted(counts)),
        d_of_w=dw,
        tw=tw,
        tw_hmax=tw_h,
        tw_closed_form=closed,
        repeated_letters=tuple(sorted(i for i, n in counts.items() if n > 1)),
    )


def positive_roots_from_word(c: CartanData, w: Sequence[int]) -> set[Vector]:
    return set(roots_beta(c, w))


def parse_word(text: str) -> tuple[int, ...]:
    """``"2,1,2"`` (1-based letters) to a 0-based tuple."""
    text = text.strip()
    if not text:
        return ()
    try:
        letters = [int(x) for x in text.split(",")]
    except ValueError:
        raise SchemaError(f"cannot parse Weyl word {text!r}") from None
    if any(x < 1 for x in letters):
        raise SchemaError("Weyl word letters are 1-based positive integers")
    return tuple(x - 1 for x in letters)
