"""PBW rewriting for iterated skew polynomial rings and quantum tori.

Elements are finite sums ``sum c * x_0^a_0 ... x_{N-1}^a_{N-1}`` with
coefficients in the integral group ring of a scalar context.  A presentation
supplies, for every pair ``k > j``, the rule ``x_k x_j = lam_kj x_j x_k +
delta_k(x_j)`` with ``delta_k(x_j)`` a normal-form element in ``x_0 .. x_{k-1}``.
Torus variables may carry negative exponents, which requires the rules moving
them to be purely scalar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import zlattice as zl
from .bicharacter import Bicharacter, CocycleClass
from .cluster import GradingMap
from .errors import CrossCheckError, PreconditionError, SchemaError
from .scalargroup import ScalarContext, ScalarElement, ScalarSubgroup, generated_subgroup
from .zlattice import Vector

DEFAULT_TERM_CAP = 100_000

Mono = tuple[int, ...]


class CoefficientPoly:
    """Element of the group ring Z[S] of the scalar group S (keys are canonical exponents)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ScalarContext, terms: Mapping[Vector, int] | None = None):
        self.ctx = ctx
        out: dict[Vector, int] = {}
        for e, c in (terms or {}).items():
            if c:
                k = ctx.canonical(e)
                out[k] = out.get(k, 0) + c
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def scalar(cls, s: ScalarElement, coeff: int = 1) -> CoefficientPoly:
        return cls(s.ctx, {s.exponents: coeff})

    @classmethod
    def integer(cls, ctx: ScalarContext, n: int) -> CoefficientPoly:
        return cls(ctx, {(0,) * ctx.m: n})

    def __add__(self, other: CoefficientPoly) -> CoefficientPoly:
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return CoefficientPoly(self.ctx, t)

    def __neg__(self) -> CoefficientPoly:
        return CoefficientPoly(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: CoefficientPoly) -> CoefficientPoly:
        return self + (-other)

    def __mul__(self, other: CoefficientPoly) -> CoefficientPoly:
        t: dict[Vector, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + v1 * v2
        return CoefficientPoly(self.ctx, t)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientPoly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def as_scalar(self) -> ScalarElement | None:
        """The scalar ``s`` when this is exactly ``1 * s``, else ``None``."""
        if len(self.terms) == 1:
            (k, v), = self.terms.items()
            if v == 1:
                return self.ctx.element(k)
        return None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mono = self.ctx.format(k)
            if mono == "1":
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class NcElement:
    """Normal-form element: map from PBW exponent vectors to :class:`CoefficientPoly`.

    Stored flat as ``(monomial, scalar exponents) -> integer``.
    """

    __slots__ = ("ctx", "n", "flat")

    def __init__(self, ctx: ScalarContext, n: int, flat: Mapping[tuple[Mono, Vector], int] | None = None):
        self.ctx = ctx
        self.n = n
        self.flat = {k: v for k, v in (flat or {}).items() if v}

    @classmethod
    def zero(cls, ctx: ScalarContext, n: int) -> NcElement:
        return cls(ctx, n)

    @classmethod
    def monomial(cls, ctx: ScalarContext, exps: Sequence[int], coeff: ScalarElement | None = None, integer: int = 1) -> NcElement:
        s = (coeff.canonical if coeff is not None else (0,) * ctx.m)
        return cls(ctx, len(exps), {(tuple(exps), s): integer})

    @classmethod
    def constant(cls, ctx: ScalarContext, n: int, c: CoefficientPoly | int = 1) -> NcElement:
        if isinstance(c, int):
            c = CoefficientPoly.integer(ctx, c)
        zero = (0,) * n
        return cls(ctx, n, {(zero, k): v for k, v in c.terms.items()})

    def terms(self) -> dict[Mono, CoefficientPoly]:
        grouped: dict[Mono, dict[Vector, int]] = {}
        for (m, s), v in self.flat.items():
            grouped.setdefault(m, {})[s] = v
        return {m: CoefficientPoly(self.ctx, t) for m, t in sorted(grouped.items())}

    def coefficient(self, mono: Sequence[int]) -> CoefficientPoly:
        mono = tuple(mono)
        return CoefficientPoly(self.ctx, {s: v for (m, s), v in self.flat.items() if m == mono})

    def __add__(self, other: NcElement) -> NcElement:
        t = dict(self.flat)
        for k, v in other.flat.items():
            t[k] = t.get(k, 0) + v
        return NcElement(self.ctx, self.n, t)

    def __neg__(self) -> NcElement:
        return NcElement(self.ctx, self.n, {k: -v for k, v in self.flat.items()})

    def __sub__(self, other: NcElement) -> NcElement:
        return self + (-other)

    def scale(self, s: ScalarElement | CoefficientPoly) -> NcElement:
        poly = CoefficientPoly.scalar(s) if isinstance(s, ScalarElement) else s
        t: dict[tuple[Mono, Vector], int] = {}
        for (m, e), v in self.flat.items():
            for k, c in poly.terms.items():
                key = (m, self.ctx.canonical(tuple(a + b for a, b in zip(e, k))))
                t[key] = t.get(key, 0) + v * c
        return NcElement(self.ctx, self.n, t)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NcElement)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.flat == other.flat
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.flat.items())))

    def is_zero(self) -> bool:
        return not self.flat

    def __len__(self) -> int:
        return len(self.flat)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.n)]
        if not self.flat:
            return "0"
        parts = []
        for m, c in self.terms().items():
            mono = "*".join(
                (nm if e == 1 else f"{nm}^{e}") for nm, e in zip(names, m) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs if len(c.terms) == 1 else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}" if len(c.terms) > 1 or " " in cs else f"{cs}*{mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()

    __repr__ = __str__


@dataclass
class OrePresentation:
    """Iterated Ore extension (or quantum torus) on generators ``x_0 .. x_{n-1}``.

    ``lam`` holds ``lam_kj`` at ``lam.entries[k][j]``, i.e. ``chi'(e_k, e_j)``;
    ``delta[(k, j)]`` is ``delta_k(x_j)`` for ``j < k`` (absent means zero).
    """

    ctx: ScalarContext
    lam: Bicharacter
    delta: Mapping[tuple[int, int], NcElement] = field(default_factory=dict)
    torus: tuple[bool, ...] = ()
    names: tuple[str, ...] = ()
    term_cap: int = DEFAULT_TERM_CAP

    def __post_init__(self) -> None:
        n = self.lam.n
        if self.lam.ctx != self.ctx:
            raise SchemaError("lambda matrix context differs from presentation context")
        self.torus = tuple(self.torus) if self.torus else (False,) * n
        self.names = tuple(self.names) if self.names else tuple(f"x{i + 1}" for i in range(n))
        if len(self.torus) != n or len(self.names) != n:
            raise SchemaError("torus flags and names must have one entry per generator")
        clean = {}
        for (k, j), d in self.delta.items():
            if not 0 <= j < k < n:
                raise SchemaError(f"derivation index ({k},{j}) must satisfy 0 <= j < k < {n}")
            if d.n != n or d.ctx != self.ctx:
                raise SchemaError(f"derivation value for ({k},{j}) has the wrong shape or context")
            if d.is_zero():
                continue
            for (m, _), _ in d.flat.items():
                if any(m[i] for i in range(k, n)):
                    raise SchemaError(f"delta_{k}(x_{j}) involves a generator of index >= {k}")
                if any(e < 0 for e in m):
                    raise SchemaError(f"delta_{k}(x_{j}) has a negative exponent")
            if self.torus[k] or self.torus[j]:
                raise SchemaError(f"torus generators x_{j}, x_{k} cannot have a nonzero derivation term")
            clean[(k, j)] = d
        self.delta = clean
        self._memo: dict[tuple[Mono, int, int], dict[tuple[Mono, Vector], int]] = {}
        self._trivial_rel = self.ctx.relations.rank == 0
        self._scalar_only = frozenset(k for k in range(n) if not any(j == k for (_, j) in clean))

    @property
    def n(self) -> int:
        return self.lam.n

    # -- construction helpers

    def one(self) -> NcElement:
        return NcElement.constant(self.ctx, self.n, 1)

    def gen(self, k: int, power: int = 1) -> NcElement:
        if power < 0 and not self.torus[k]:
            raise PreconditionError(f"x_{k} is not invertible")
        exps = [0] * self.n
        exps[k] = power
        return NcElement.monomial(self.ctx, exps)

    def ordered_monomial(self, exps: Sequence[int]) -> NcElement:
        for k, e in enumerate(exps):
            if e < 0 and not self.torus[k]:
                raise PreconditionError(f"x_{k} is not invertible")
        return NcElement.monomial(self.ctx, exps)

    # -- multiplication

    def _canon(self, e: Vector) -> Vector:
        return e if self._trivial_rel else self.ctx.canonical(e)

    def _mul_gen(self, mono: Mono, k: int, e: int) -> dict[tuple[Mono, Vector], int]:
        """Normal form of ``x^mono * x_k^e`` (scalar part 1); ``e = +-1`` unless ``x_k`` moves by scalars only."""
        key = (mono, k, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        n, zero = self.n, (0,) * self.ctx.m
        last = max((i for i in range(n) if mono[i]), default=-1)
        if last <= k:
            new = list(mono)
            new[k] += e
            res = {(tuple(new), zero): 1}
        else:
            a = mono[last]
            rest = list(mono)
            rest[last] = 0
            dkey = (last, k)
            if dkey not in self.delta:
                # x_last^a x_k^e = lam^(a e) x_k^e x_last^a
                scal = tuple(a * e * x for x in self.lam.entries[last][k])
                inner = self._mul_gen(tuple(rest), k, e)
                res = {}
                for (m, s), v in inner.items():
                    m2 = list(m)
                    m2[last] += a
                    kk = (tuple(m2), self._canon(tuple(p + q for p, q in zip(s, scal))))
                    res[kk] = res.get(kk, 0) + v
            else:
                if a < 0 or e < 0:
                    raise PreconditionError("negative powers cannot pass a nonzero derivation term")
                # x^rest x_last^(a-1) (lam x_k x_last + delta)
                lower = list(mono)
                lower[last] -= 1
                lam = self.lam.entries[last][k]
                res = {}
                for (m, s), v in self._mul_gen(tuple(lower), k, e).items():
                    for (m2, s2), v2 in self._mul_gen(m, last, 1).items():
                        kk = (m2, self._canon(tuple(p + q + r for p, q, r in zip(s, s2, lam))))
                        res[kk] = res.get(kk, 0) + v * v2
                for (m, s), v in self._mul_mono_elem(tuple(lower), self.delta[dkey]).items():
                    res[(m, s)] = res.get((m, s), 0) + v
                res = {kk: v for kk, v in res.items() if v}
        if len(res) > self.term_cap:
            raise PreconditionError(f"straightening exceeded the term cap of {self.term_cap}")
        self._memo[key] = res
        return res

    def _mul_mono_word(self, mono: Mono, right: Mono) -> dict[tuple[Mono, Vector], int]:
        cur: dict[tuple[Mono, Vector], int] = {(mono, (0,) * self.ctx.m): 1}
        for k, e in enumerate(right):
            if not e:
                continue
            # purely scalar rules let a whole power move at once
            step, reps = (e, 1) if k in self._scalar_only else ((1 if e > 0 else -1), abs(e))
            for _ in range(reps):
                nxt: dict[tuple[Mono, Vector], int] = {}
                for (m, s), v in cur.items():
                    for (m2, s2), v2 in self._mul_gen(m, k, step).items():
                        kk = (m2, self._canon(tuple(p + q for p, q in zip(s, s2))))
                        nxt[kk] = nxt.get(kk, 0) + v * v2
                cur = {kk: v for kk, v in nxt.items() if v}
                if len(cur) > self.term_cap:
                    raise PreconditionError(f"straightening exceeded the term cap of {self.term_cap}")
        return cur

    def _mul_mono_elem(self, mono: Mono, elem: NcElement) -> dict[tuple[Mono, Vector], int]:
        out: dict[tuple[Mono, Vector], int] = {}
        for (m, s), v in elem.flat.items():
            for (m2, s2), v2 in self._mul_mono_word(mono, m).items():
                kk = (m2, self._canon(tuple(p + q for p, q in zip(s, s2))))
                out[kk] = out.get(kk, 0) + v * v2
        return {kk: v for kk, v in out.items() if v}

    def mul(self, a: NcElement, b: NcElement) -> NcElement:
        self._check(a)
        self._check(b)
        out: dict[tuple[Mono, Vector], int] = {}
        for (m1, s1), v1 in a.flat.items():
            for (m2, s2), v2 in self._mul_mono_elem(m1, b).items():
                kk = (m2, self._canon(tuple(p + q for p, q in zip(s1, s2))))
                out[kk] = out.get(kk, 0) + v1 * v2
        res = NcElement(self.ctx, self.n, out)
        if len(res) > self.term_cap:
            raise PreconditionError(f"product exceeded the term cap of {self.term_cap}")
        return res

    def product(self, *factors: NcElement) -> NcElement:
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    def commutator(self, a: NcElement, b: NcElement) -> NcElement:
        return self.mul(a, b) - self.mul(b, a)

    def _check(self, a: NcElement) -> None:
        if a.ctx != self.ctx or a.n != self.n:
            raise PreconditionError("element does not belong to this presentation")


def straighten(p: OrePresentation, word: Iterable[tuple[int, int] | int]) -> NcElement:
    """Normal form of a product of generator powers, e.g. ``[(1, 1), (0, 2)]`` for ``x_1 x_0^2``."""
    out = p.one()
    for item in word:
        k, e = (item, 1) if isinstance(item, int) else item
        if not 0 <= k < p.n:
            raise SchemaError(f"generator index {k} out of range")
        out = p.mul(out, p.gen(k, e))
    return out


# -- presentations ----------------------------------------------------------


def later_scalar_matrix(ctx: ScalarContext, n: int, later: Mapping[tuple[int, int], ScalarElement]) -> Bicharacter:
    """Bicharacter with ``entries[k][j] = later[(k, j)]`` for ``k > j``; missing pairs commute."""
    one = ctx.one()
    return Bicharacter.from_function(ctx, n, lambda j, k: later.get((k, j), one).inverse())


def torus_presentation(chi: Bicharacter, invertible: bool = True) -> OrePresentation:
    """Quantum torus (or affine space) with ``y_i y_j = chi(e_i, e_j) y_j y_i``."""
    names = tuple(f"y{i + 1}" for i in range(chi.n))
    return OrePresentation(chi.ctx, chi, {}, (invertible,) * chi.n, names)


def quantum_matrices_presentation(n: int, lam: ScalarElement, p: Mapping[tuple[int, int], ScalarElement]) -> OrePresentation:
    """Generators ``X_ij`` in lexicographic order; ``p`` as in :func:`twistinv.cgl.quantum_matrices`."""
    ctx = lam.ctx
    one = ctx.one()
    N = n * n

    def pp(a: int, b: int) -> ScalarElement:
        if a == b:
            return one
        return p[(a, b)] if a < b else p[(b, a)].inverse()

    later = {}
    delta = {}
    for k in range(N):
        l, m = divmod(k, n)
        for j in range(k):
            i, jj = divmod(j, n)
            if l > i and m > jj:
                later[(k, j)] = pp(l, i) * pp(jj, m)
                mono = [0] * N
                mono[i * n + m] += 1
                mono[l * n + jj] += 1
                coeff = CoefficientPoly.scalar(lam * pp(l, i)) - CoefficientPoly.scalar(pp(l, i))
                delta[(k, j)] = NcElement(ctx, N, {(tuple(mono), s): v for s, v in coeff.terms.items()})
            elif l > i:
                later[(k, j)] = lam * pp(l, i) * pp(jj, m)
            else:
                later[(k, j)] = pp(jj, m)
    names = tuple(f"X{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return OrePresentation(ctx, later_scalar_matrix(ctx, N, later), delta, (False,) * N, names)


def quantized_weyl_presentation(n: int, qs: Sequence[ScalarElement], p: Mapping[tuple[int, int], ScalarElement]) -> OrePresentation:
    """Generators in the order ``y_1, x_1, y_2, x_2, ..., y_n, x_n``."""
    ctx = qs[0].ctx
    one = ctx.one()

    def pp(a: int, b: int) -> ScalarElement:
        if a == b:
            return one
        return p[(a, b)] if a < b else p[(b, a)].inverse()

    N = 2 * n
    ypos = lambda a: 2 * a  # noqa: E731
    xpos = lambda a: 2 * a + 1  # noqa: E731
    later: dict[tuple[int, int], ScalarElement] = {}

    def rel(u: int, v: int, c: ScalarElement) -> None:
        # u v = c v u with no correction term
        if u > v:
            later[(u, v)] = c
        else:
            later[(v, u)] = c.inverse()

    for a in range(n):
        for b in range(n):
            if a != b:
                rel(ypos(a), ypos(b), pp(a, b))
            if a < b:
                rel(xpos(a), xpos(b), qs[a] * pp(a, b))
                rel(xpos(a), ypos(b), pp(b, a))
            elif a > b:
                rel(xpos(a), ypos(b), qs[b] * pp(b, a))
    delta = {}
    for j in range(n):
        later[(xpos(j), ypos(j))] = qs[j]
        d = NcElement.constant(ctx, N, 1)
        for l in range(j):
            mono = [0] * N
            mono[ypos(l)] = 1
            mono[xpos(l)] = 1
            coeff = CoefficientPoly.scalar(qs[l]) - CoefficientPoly.integer(ctx, 1)
            d = d + NcElement(ctx, N, {(tuple(mono), s): v for s, v in coeff.terms.items()})
        delta[(xpos(j), ypos(j))] = d
    names = tuple(nm for a in range(n) for nm in (f"y{a + 1}", f"x{a + 1}"))
    return OrePresentation(ctx, later_scalar_matrix(ctx, N, later), delta, (False,) * N, names)


# -- oracles ----------------------------------------------------------------


def _single_scalar(e: NcElement, mono: Mono) -> ScalarElement:
    if len(e.flat) != 1:
        raise CrossCheckError(f"expected a single torus monomial, got {e}")
    (m, s), v = next(iter(e.flat.items()))
    if m != mono or v != 1:
        raise CrossCheckError(f"expected a scalar multiple of {mono}, got {e}")
    return e.ctx.element(s)


def torus_commutator_scalar(chi: Bicharacter, a: Sequence[int], b: Sequence[int], presentation: OrePresentation | None = None) -> ScalarElement:
    """``s`` with ``y^a y^b = s y^b y^a``, by straightening ordered monomials in the torus."""
    p = presentation or torus_presentation(chi)
    a, b = tuple(a), tuple(b)
    if len(a) != chi.n or len(b) != chi.n:
        raise PreconditionError(f"vectors must have length {chi.n}")
    for k, e in enumerate(a + b):
        if e < 0 and not p.torus[k % p.n]:
            raise PreconditionError(f"x_{k % p.n} is not invertible")
    total = tuple(x + y for x, y in zip(a, b))
    ab = _single_scalar(NcElement(p.ctx, p.n, p._mul_mono_word(a, b)), total)
    ba = _single_scalar(NcElement(p.ctx, p.n, p._mul_mono_word(b, a)), total)
    return ab / ba


def box(n: int, radius: int) -> list[Vector]:
    return list(itertools.product(range(-radius, radius + 1), repeat=n))


def ad_bruteforce(chi: Bicharacter, box_radius: int) -> ScalarSubgroup:
    """Subgroup generated by commutator scalars of monomial units over a box."""
    if box_radius < 1:
        raise PreconditionError("box radius must be at least 1")
    p = torus_presentation(chi)
    pts = box(chi.n, box_radius)
    vals = {torus_commutator_scalar(chi, a, b, p) for a in pts for b in pts}
    return generated_subgroup(chi.ctx, sorted(vals, key=lambda s: s.canonical))


def twisted_product(
    chi: Bicharacter,
    phi: GradingMap,
    csharp: CocycleClass,
    a: Sequence[int],
    b: Sequence[int],
    presentation: OrePresentation | None = None,
) -> NcElement:
    """``y^a *_c y^b = c(phi a, phi b) y^a y^b`` using the upper-triangular cocycle of ``csharp``."""
    p = presentation or torus_presentation(chi)
    c = csharp.cocycle(phi(a), phi(b))
    return p.mul(p.ordered_monomial(a), p.ordered_monomial(b)).scale(c)


def twisted_commutation_matrix(chi: Bicharacter, phi: GradingMap, csharp: CocycleClass) -> Bicharacter:
    """Entries ``(y_i * y_j) / (y_j * y_i)`` of the twisted product, from :func:`twisted_product`."""
    p = torus_presentation(chi)
    units = zl.unit_rows(chi.n)

    def entry(i: int, j: int) -> Vector:
        target = tuple(x + y for x, y in zip(units[i], units[j]))
        ij = _single_scalar(twisted_product(chi, phi, csharp, units[i], units[j], p), target)
        ji = _single_scalar(twisted_product(chi, phi, csharp, units[j], units[i], p), target)
        return (ij / ji).exponents

    return Bicharacter.from_function(chi.ctx, chi.n, entry)


@dataclass
class RelationReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def verify_weyl_normal_elements(
    n: int, qs: Sequence[ScalarElement], p: Mapping[tuple[int, int], ScalarElement], *, raise_on_failure: bool = True
) -> RelationReport:
    """Check the relations of ``z_k = x_k y_k - y_k x_k`` in the quantized Weyl algebra.

    ``z_k y_j = q_j y_j z_k`` and ``z_k x_j = q_j^-1 x_j z_k`` for ``j <= k``,
    plain commutation for ``j > k``, and ``z_k z_l = z_l z_k``.
    """
    pres = quantized_weyl_presentation(n, qs, p)
    y = [pres.gen(2 * a) for a in range(n)]
    x = [pres.gen(2 * a + 1) for a in range(n)]
    z = [pres.commutator(x[k], y[k]) for k in range(n)]
    report = RelationReport()
    for k in range(n):
        for j in range(n):
            cy = qs[j] if j <= k else qs[0].ctx.one()
            lhs = pres.mul(z[k], y[j])
            rhs = pres.mul(y[j], z[k]).scale(cy)
            report.checks.append((f"z{k + 1} y{j + 1} = {cy} y{j + 1} z{k + 1}", lhs == rhs))
            cx = cy.inverse()
            lhs = pres.mul(z[k], x[j])
            rhs = pres.mul(x[j], z[k]).scale(cx)
            report.checks.append((f"z{k + 1} x{j + 1} = {cx} x{j + 1} z{k + 1}", lhs == rhs))
        for l in range(k + 1, n):
            report.checks.append((f"z{k + 1} z{l + 1} = z{l + 1} z{k + 1}", pres.mul(z[k], z[l]) == pres.mul(z[l], z[k])))
    if raise_on_failure and not report.ok:
        raise CrossCheckError("quantized Weyl relations failed: " + "; ".join(report.failures()))
    return report


def check_lambda_against_presentation(p: OrePresentation, lam: Bicharacter) -> list[tuple[int, int]]:
    """Pairs ``(k, j)`` where the leading scalar of ``x_k x_j`` disagrees with ``lam``."""
    bad = []
    for k in range(p.n):
        for j in range(k):
            prod = p.mul(p.gen(k), p.gen(j))
            mono = tuple(1 if i in (j, k) else 0 for i in range(p.n))
            s = prod.coefficient(mono).as_scalar()
            if s is None or s != lam.value(k, j):
                bad.append((k, j))
    return bad
