"""Subgroups of K^x generated by named parameters.

A :class:`ScalarContext` fixes an ordered list of parameter names and a
lattice of exponent vectors declared equal to 1.  A scalar is an exponent
vector, so ``q^2 * lambda^-1`` over ``("q", "lambda")`` is ``(2, -1)``.
Parameters are multiplicatively independent unless a relation says otherwise;
declaring ``q^6 = 1`` makes ``q`` a sixth root of unity.

``scale`` records adjoined roots: in a context of scale 2 the vector ``(1,)``
stands for ``q^(1/2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import zlattice as zl
from .errors import PreconditionError, SchemaError
from .zlattice import Lattice, Vector

INFINITE = math.inf


@dataclass(frozen=True)
class ScalarContext:
    params: tuple[str, ...]
    relations: Lattice = None  # type: ignore[assignment]
    scale: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.params)) != len(self.params):
            raise SchemaError(f"duplicate parameter names in {self.params}")
        if self.relations is None:
            object.__setattr__(self, "relations", zl.zero_lattice(len(self.params)))
        elif not isinstance(self.relations, Lattice):
            object.__setattr__(self, "relations", zl.lattice(self.relations, len(self.params)))
        if self.relations.ambient_rank != len(self.params):
            raise SchemaError(
                f"relation lattice has rank {self.relations.ambient_rank}, "
                f"context has {len(self.params)} parameters"
            )
        if self.scale < 1:
            raise SchemaError("scale must be a positive integer")

    @classmethod
    def free(cls, *params: str) -> ScalarContext:
        return cls(tuple(params))

    @classmethod
    def with_relations(cls, params: Sequence[str], relations: Iterable[Sequence[int]]) -> ScalarContext:
        return cls(tuple(params), zl.lattice(relations, len(params)))

    @property
    def m(self) -> int:
        return len(self.params)

    def canonical(self, exps: Sequence[int]) -> Vector:
        if len(exps) != self.m:
            raise SchemaError(f"exponent vector {tuple(exps)} does not match parameters {self.params}")
        return zl.reduce_mod(self.relations, [int(x) for x in exps])

    def element(self, exps: Sequence[int]) -> ScalarElement:
        return ScalarElement(self, tuple(int(x) for x in exps))

    def one(self) -> ScalarElement:
        return ScalarElement(self, (0,) * self.m)

    def param(self, name: str) -> ScalarElement:
        try:
            i = self.params.index(name)
        except ValueError:
            raise SchemaError(f"unknown parameter {name!r}; declared: {self.params}") from None
        return self.element([self.scale if j == i else 0 for j in range(self.m)])

    def parse(self, text: str) -> ScalarElement:
        """Parse a monomial such as ``"lambda*p12^-1"`` or ``"q^(1/2)"``; ``"1"`` is the identity."""
        return self.element(parse_monomial(text, self.params, self.scale))

    def format(self, exps: Sequence[int]) -> str:
        return format_monomial(exps, self.params, self.scale)


def parse_monomial(text: str, params: Sequence[str], scale: int = 1) -> Vector:
    text = text.strip().replace(" ", "")
    exps = [0] * len(params)
    if text in ("", "1"):
        return tuple(exps)
    for factor in text.split("*"):
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)(?:/(\d+))?\)?)?", factor)
        if not m:
            raise SchemaError(f"cannot parse monomial factor {factor!r}")
        name, num, den = m.group(1), m.group(2), m.group(3)
        if name not in params:
            raise SchemaError(f"unknown parameter {name!r}; declared: {tuple(params)}")
        e = Fraction(int(num) if num else 1, int(den) if den else 1) * scale
        if e.denominator != 1:
            raise SchemaError(f"exponent of {factor!r} is not a multiple of 1/{scale}")
        exps[params.index(name)] += int(e)
    return tuple(exps)


def format_monomial(exps: Sequence[int], params: Sequence[str], scale: int = 1) -> str:
    parts = []
    for name, e in zip(params, exps):
        if not e:
            continue
        f = Fraction(e, scale)
        if f == 1:
            parts.append(name)
        elif f.denominator == 1:
            parts.append(f"{name}^{f.numerator}")
        else:
            parts.append(f"{name}^({f.numerator}/{f.denominator})")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True, eq=False)
class ScalarElement:
    """A scalar as an exponent vector.  Equality is taken modulo the relations."""

    ctx: ScalarContext
    exponents: Vector

    def __post_init__(self) -> None:
        if len(self.exponents) != self.ctx.m:
            raise SchemaError(f"exponent vector {self.exponents} does not match parameters {self.ctx.params}")

    @property
    def canonical(self) -> Vector:
        return self.ctx.canonical(self.exponents)

    def _check(self, other: ScalarElement) -> None:
        if other.ctx != self.ctx:
            raise PreconditionError("scalars live in different contexts")

    def __mul__(self, other: ScalarElement) -> ScalarElement:
        self._check(other)
        return ScalarElement(self.ctx, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: ScalarElement) -> ScalarElement:
        self._check(other)
        return ScalarElement(self.ctx, tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> ScalarElement:
        return ScalarElement(self.ctx, tuple(k * a for a in self.exponents))

    def inverse(self) -> ScalarElement:
        return self ** -1

    def is_one(self) -> bool:
        return not any(self.canonical)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarElement):
            return NotImplemented
        return self.ctx == other.ctx and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.ctx, self.canonical))

    def __repr__(self) -> str:
        return f"ScalarElement({self})"

    def __str__(self) -> str:
        return self.ctx.format(self.canonical)


@dataclass(frozen=True)
class ScalarSubgroup:
    """Subgroup of the scalar group, stored as the HNF lattice of exponents it contains.

    The lattice always contains ``ctx.relations``; the trivial subgroup is the
    relation lattice itself.
    """

    ctx: ScalarContext
    lattice: Lattice = field(compare=True)

    def __contains__(self, s: ScalarElement) -> bool:
        return is_member(self, s)

    def __le__(self, other: ScalarSubgroup) -> bool:
        return is_subgroup(self, other)

    def is_trivial(self) -> bool:
        return self.lattice == self.ctx.relations

    def generators(self) -> list[ScalarElement]:
        """HNF basis rows that are nontrivial modulo the relations."""
        rel = self.ctx.relations
        return [self.ctx.element(r) for r in self.lattice.basis if not zl.contains(rel, r)]

    def describe(self) -> str:
        gens = self.generators()
        return "<" + ", ".join(str(g) for g in gens) + ">" if gens else "<1>"

    def invariant_factors(self) -> tuple[int, ...]:
        return zl.quotient_invariants(self.lattice, self.ctx.relations)

    def __str__(self) -> str:
        return self.describe()


def generated_subgroup(ctx: ScalarContext, gens: Iterable[ScalarElement]) -> ScalarSubgroup:
    rows = []
    for g in gens:
        if g.ctx != ctx:
            raise PreconditionError("generator belongs to a different scalar context")
        rows.append(g.exponents)
    return ScalarSubgroup(ctx, zl.hnf(rows + list(ctx.relations.basis), ctx.m))


def trivial_subgroup(ctx: ScalarContext) -> ScalarSubgroup:
    return ScalarSubgroup(ctx, ctx.relations)


def is_member(g: ScalarSubgroup, s: ScalarElement) -> bool:
    if s.ctx != g.ctx:
        raise PreconditionError("scalar and subgroup live in different contexts")
    return zl.contains(g.lattice, s.exponents)


def is_subgroup(a: ScalarSubgroup, b: ScalarSubgroup) -> bool:
    if a.ctx != b.ctx:
        raise PreconditionError("subgroups live in different contexts")
    return zl.is_sublattice(a.lattice, b.lattice)


def intersection(a: ScalarSubgroup, b: ScalarSubgroup) -> ScalarSubgroup:
    if a.ctx != b.ctx:
        raise PreconditionError("subgroups live in different contexts")
    return ScalarSubgroup(a.ctx, zl.intersect(a.lattice, b.lattice))


def product(a: ScalarSubgroup, b: ScalarSubgroup) -> ScalarSubgroup:
    if a.ctx != b.ctx:
        raise PreconditionError("subgroups live in different contexts")
    return ScalarSubgroup(a.ctx, zl.join(a.lattice, b.lattice))


def is_cyclic(g: ScalarSubgroup) -> bool:
    """At most one nontrivial invariant factor in ``lattice / relations``."""
    return len(g.invariant_factors()) <= 1


def cardinality(g: ScalarSubgroup) -> int | float:
    """Order of the subgroup; ``INFINITE`` (``math.inf``) when it has free part."""
    factors = g.invariant_factors()
    if any(f == 0 for f in factors):
        return INFINITE
    return math.prod(factors)


def adjoin_square_roots(ctx: ScalarContext) -> tuple[ScalarContext, "Embedding"]:
    """Context in which every scalar has a square root; exponents double."""
    doubled = zl.hnf([tuple(2 * x for x in r) for r in ctx.relations.basis], ctx.m)
    refined = ScalarContext(ctx.params, doubled, ctx.scale * 2)
    return refined, Embedding(ctx, refined, 2)


@dataclass(frozen=True)
class Embedding:
    """Map from a context into a refinement multiplying all exponents by ``factor``."""

    source: ScalarContext
    target: ScalarContext
    factor: int

    def __call__(self, s: ScalarElement) -> ScalarElement:
        if s.ctx != self.source:
            raise PreconditionError("element is not in the embedding's source context")
        return self.target.element([self.factor * x for x in s.exponents])

    def subgroup(self, g: ScalarSubgroup) -> ScalarSubgroup:
        if g.ctx != self.source:
            raise PreconditionError("subgroup is not in the embedding's source context")
        return generated_subgroup(self.target, [self(g.ctx.element(r)) for r in g.lattice.basis])

    def then(self, other: Embedding) -> Embedding:
        if other.source != self.target:
            raise PreconditionError("embeddings do not compose")
        return Embedding(self.source, other.target, self.factor * other.factor)


def product_context(a: ScalarContext, b: ScalarContext) -> ScalarContext:
    """Disjoint union of parameter sets; relations block-diagonal.  Scales must agree."""
    if a.scale != b.scale:
        raise PreconditionError("cannot combine contexts with different scales")
    rows = [r + (0,) * b.m for r in a.relations.basis] + [(0,) * a.m + r for r in b.relations.basis]
    return ScalarContext(a.params + b.params, zl.lattice(rows, a.m + b.m), a.scale)


def subgroup_product(a: ScalarSubgroup, b: ScalarSubgroup) -> ScalarSubgroup:
    """``a x b`` inside :func:`product_context` of their contexts."""
    ctx = product_context(a.ctx, b.ctx)
    rows = [r + (0,) * b.ctx.m for r in a.lattice.basis] + [(0,) * a.ctx.m + r for r in b.lattice.basis]
    return ScalarSubgroup(ctx, zl.lattice(rows, ctx.m))
