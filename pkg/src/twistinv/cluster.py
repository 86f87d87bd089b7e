"""Invariants of algebras sitting between a quantum affine space and its quantum torus.

A :class:`SandwichDescriptor` records the commutation bicharacter ``chi`` of
the cluster variables and the grading map ``phi: Z^N -> Z^r`` through which the
algebra is graded.  The AD invariant is ``<chi(e_i, e_j)>`` and the twist
invariant is ``<chi(ker phi, Z^N)>``; both are exact lattice computations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from . import zlattice as zl
from .bicharacter import (
    Bicharacter,
    CocycleClass,
    evaluate,
    image_subgroup,
    twist_bicharacter,
    values_subgroup,
)
from .errors import PreconditionError, SchemaError
from .scalargroup import INFINITE, ScalarContext, ScalarSubgroup, cardinality, is_cyclic
from .zlattice import IntMatrix, Lattice


@dataclass(frozen=True)
class GradingMap:
    """Integer matrix whose row ``i`` is the degree of the ``i``-th generator."""

    matrix: IntMatrix

    @classmethod
    def from_rows(cls, rows, r: int | None = None) -> GradingMap:
        return cls(IntMatrix.from_rows(rows, r))

    @classmethod
    def identity(cls, n: int) -> GradingMap:
        return cls(IntMatrix.identity(n))

    @property
    def source_rank(self) -> int:
        return self.matrix.nrows

    @property
    def target_rank(self) -> int:
        return self.matrix.ncols

    def rank(self) -> int:
        return zl.rank(self.matrix)

    def __call__(self, v) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def kernel(self) -> Lattice:
        return zl.kernel_basis(self.matrix)

    def check_surjective(self) -> None:
        """Raise unless the map is onto Z^r (rank r and unit Smith factors)."""
        r = self.target_rank
        found, nonzero = zl.saturation_index(self.matrix)
        if found != r:
            raise PreconditionError(
                f"grading map is not surjective onto Z^{r}: rank {found} found, {r} required"
            )
        if any(f != 1 for f in nonzero):
            raise PreconditionError(
                f"grading map has full rank {r} but image of index {_prod(nonzero)} in Z^{r}; "
                "it is not surjective"
            )

    def image_coordinates(self) -> GradingMap:
        """Same map with its target replaced by the image, when the image is saturated."""
        rank, nonzero = zl.saturation_index(self.matrix)
        if any(f != 1 for f in nonzero):
            raise PreconditionError("image of the grading map is not a direct summand")
        img = zl.hnf(self.matrix)
        rows = [zl.coordinates(img, r) for r in self.matrix.rows()]
        return GradingMap(IntMatrix.from_rows(rows, rank))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass(frozen=True)
class SandwichDescriptor:
    ctx: ScalarContext
    chi: Bicharacter
    phi: GradingMap
    label: str = ""
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.chi.ctx != self.ctx:
            raise SchemaError("bicharacter context differs from descriptor context")
        if self.phi.source_rank != self.chi.n:
            raise SchemaError(
                f"grading map has {self.phi.source_rank} rows but there are {self.chi.n} cluster variables"
            )

    @property
    def n(self) -> int:
        return self.chi.n

    @property
    def r(self) -> int:
        return self.phi.target_rank


class Classification(str, enum.Enum):
    TWIST_TRIVIAL = "twist-trivial"
    ESSENTIALLY_UNIPARAMETER = "essentially-uniparameter"
    TRULY_MULTIPARAMETER = "truly-multiparameter"


@dataclass(frozen=True)
class PiReport:
    is_pi: bool
    card_ad: int | float

    @property
    def pi_degree_lower_bound(self) -> int | None:
        return None if self.card_ad == INFINITE else int(self.card_ad)


def ad_invariant(d: SandwichDescriptor) -> ScalarSubgroup:
    return values_subgroup(d.chi)


def tw_invariant(d: SandwichDescriptor) -> ScalarSubgroup:
    d.phi.check_surjective()
    return image_subgroup(d.chi, d.phi.kernel())


def apply_twist(d: SandwichDescriptor, csharp: CocycleClass) -> SandwichDescriptor:
    if csharp.rank != d.r:
        raise PreconditionError(f"cocycle class has rank {csharp.rank}, grading group has rank {d.r}")
    chi = twist_bicharacter(d.chi, d.phi.matrix, csharp)
    return replace(d, chi=chi, label=f"{d.label}^c" if d.label else "")


def polynomial_extend(d: SandwichDescriptor, s: int) -> SandwichDescriptor:
    """Adjoin ``s`` central variables, each in its own new grading degree."""
    if s < 0:
        raise PreconditionError("number of new variables must be nonnegative")
    if s == 0:
        return d
    r = d.r
    rows = [list(row) + [0] * s for row in d.phi.matrix.rows()]
    rows += [[0] * r + [1 if j == i else 0 for j in range(s)] for i in range(s)]
    phi = GradingMap(IntMatrix.from_rows(rows, r + s))
    label = f"{d.label}[x1..x{s}]" if d.label else ""
    return replace(d, chi=d.chi.extend(s), phi=phi, label=label)


def is_pi(d: SandwichDescriptor) -> PiReport:
    card = cardinality(ad_invariant(d))
    return PiReport(card != INFINITE, card)


def classify(tw: ScalarSubgroup) -> Classification:
    if tw.is_trivial():
        return Classification.TWIST_TRIVIAL
    if is_cyclic(tw):
        return Classification.ESSENTIALLY_UNIPARAMETER
    return Classification.TRULY_MULTIPARAMETER


def uniparameter_report(d: SandwichDescriptor) -> Classification:
    return classify(tw_invariant(d))


def adapted_basis(phi: GradingMap) -> tuple[IntMatrix, int, IntMatrix]:
    """Basis ``b`` of Z^N (rows) whose last ``N - r`` rows span ``ker phi``.

    Returns ``(b, r, g)`` where the first ``r`` rows of ``b`` map to the rows
    of ``g``, a basis of Z^r.
    """
    phi.check_surjective()
    factors, left, right = zl.snf(phi.matrix)
    r = phi.target_rank
    # left @ phi @ right = [I_r; 0], so (left @ phi)[:r] = right^{-1}
    images = (left @ phi.matrix).rows()[:r]
    return left, r, IntMatrix.from_rows(images, r)


def block_killing_cocycle(d: SandwichDescriptor) -> CocycleClass:
    """Cocycle class on Z^r whose twist kills ``chi`` on a complement of ``ker phi``.

    After twisting, ``chi_c(b_i, b_j) = 1`` whenever both ``b_i`` and ``b_j``
    lie in the chosen complement, so ``AD`` of the twist equals ``tw``.
    """
    b, r, g = adapted_basis(d.phi)
    brows = b.rows()[:r]
    ctx = d.ctx
    # sharp(g_i, g_j) = chi(b_i, b_j)^-1 on the image basis g; move to standard coordinates
    killing = Bicharacter.from_function(
        ctx, r, lambda i, j: evaluate(d.chi, brows[i], brows[j]).inverse().exponents
    )
    _, _, right = zl.snf(d.phi.matrix)
    # g = right^{-1}; standard basis e_a = sum_i right[a, i] g_i
    return CocycleClass(killing.pullback(right))


def rebase(d: SandwichDescriptor, u: IntMatrix) -> SandwichDescriptor:
    """Change of cluster basis by a unimodular ``u`` (rows are the new basis)."""
    if u.nrows != d.n or u.ncols != d.n or abs(zl.det(u.rows())) != 1:
        raise PreconditionError("rebasing matrix must be unimodular of size N")
    return replace(d, chi=d.chi.pullback(u), phi=GradingMap(u @ d.phi.matrix))
