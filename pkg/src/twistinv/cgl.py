"""CGL extensions (quantum nilpotent algebras) described by their commutation data.

A descriptor carries the skew-symmetric matrix ``lam`` of leading commutation
scalars (``x_k x_j = lam[k][j] x_j x_k + delta_k(x_j)`` for ``j < k``), the
level function ``eta``, and for every variable with a nonzero skew derivation
one *witness*: an earlier variable ``j`` together with the exponent vector of a
PBW monomial occurring in ``delta_k(x_j)``.  These are the only pieces of the
derivations that the invariant formulas consume.

Indices are 0-based throughout the Python API; descriptor files use 1-based
indices (see :mod:`twistinv.descriptors`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import zlattice as zl
from .bicharacter import Bicharacter, evaluate, values_subgroup
from .cluster import GradingMap, SandwichDescriptor
from .errors import CrossCheckError, PreconditionError, SchemaError
from .scalargroup import (
    INFINITE,
    ScalarContext,
    ScalarElement,
    ScalarSubgroup,
    cardinality,
    generated_subgroup,
)
from .zlattice import IntMatrix, Vector


@dataclass(frozen=True)
class Witness:
    """``delta_k(x_j) != 0`` and ``x^m`` (exponents on ``x_0 .. x_{k-1}``) occurs in it."""

    j: int
    m: tuple[int, ...]


@dataclass(frozen=True)
class CglDescriptor:
    ctx: ScalarContext
    lam: Bicharacter
    eta: tuple[int, ...]
    delta_witness: Mapping[int, Witness]
    lambda_k: Mapping[int, ScalarElement]
    grading_pi: GradingMap | None = None
    symmetric: bool = False
    label: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        n = self.lam.n
        if self.lam.ctx != self.ctx:
            raise SchemaError("lambda matrix context differs from descriptor context")
        if len(self.eta) != n:
            raise SchemaError(f"eta has {len(self.eta)} entries, expected {n}")
        object.__setattr__(self, "delta_witness", dict(sorted(self.delta_witness.items())))
        object.__setattr__(self, "lambda_k", dict(sorted(self.lambda_k.items())))
        for k, w in self.delta_witness.items():
            if not 0 <= k < n:
                raise SchemaError(f"witness index {k} out of range")
            if not 0 <= w.j < k:
                raise SchemaError(f"witness for x_{k} names x_{w.j}, which does not precede it")
            if len(w.m) != k or any(e < 0 for e in w.m):
                raise SchemaError(f"witness monomial for x_{k} must be {k} nonnegative exponents")
        for k in self.delta_witness:
            if k not in self.lambda_k:
                raise SchemaError(f"lambda_k missing for x_{k}, which has a nonzero derivation")
        for k, v in self.lambda_k.items():
            if v.ctx != self.ctx:
                raise SchemaError(f"lambda_{k} lives in a different context")
            if cardinality(generated_subgroup(self.ctx, [v])) != INFINITE:
                warnings.warn(
                    f"lambda_{k} = {v} is a root of unity; formulas are evaluated formally",
                    RuntimeWarning,
                    stacklevel=2,
                )
        if self.grading_pi is not None and self.grading_pi.source_rank != n:
            raise SchemaError("grading map must have one row per variable")

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def nonvanishing(self) -> list[int]:
        """N(A): variables with a nonzero derivation."""
        return list(self.delta_witness)

    @property
    def vanishing(self) -> list[int]:
        """V(A): variables with a zero derivation."""
        return [k for k in range(self.n) if k not in self.delta_witness]


def predecessor(eta: Sequence[int]) -> tuple[list[int | None], list[int]]:
    """Predecessor on level sets of ``eta`` and the orbit lengths ``O_-``.

    ``None`` plays the role of minus infinity.
    """
    p: list[int | None] = []
    last: dict[int, int] = {}
    for k, v in enumerate(eta):
        p.append(last.get(v))
        last[v] = k
    o_minus = []
    for k in range(len(eta)):
        steps, cur = 0, p[k]
        while cur is not None:
            steps += 1
            cur = p[cur]
        o_minus.append(steps)
    return p, o_minus


def _chain(p: Sequence[int | None], k: int) -> list[int]:
    out = [k]
    while p[out[-1]] is not None:
        out.append(p[out[-1]])
    return out


def beta_matrix(eta: Sequence[int]) -> IntMatrix:
    """Rows ``beta(e_k) = sum_l e_{p^l(k)}``."""
    p, _ = predecessor(eta)
    n = len(eta)
    rows = []
    for k in range(n):
        row = [0] * n
        for i in _chain(p, k):
            row[i] = 1
        rows.append(row)
    return IntMatrix.from_rows(rows, n)


def cluster_matrix(d: CglDescriptor) -> tuple[Bicharacter, IntMatrix]:
    """Commutation matrix of the homogeneous prime elements and the change of basis ``beta``."""
    beta = beta_matrix(d.eta)
    return d.lam.pullback(beta), beta


def cluster_matrix_direct(d: CglDescriptor) -> Bicharacter:
    """Same matrix by the double product over predecessor chains (no pullback)."""
    p, _ = predecessor(d.eta)
    ctx = d.ctx

    def q(j: int, k: int) -> Vector:
        out = [0] * ctx.m
        for a in _chain(p, j):
            for b in _chain(p, k):
                for i, x in enumerate(d.lam.entries[a][b]):
                    out[i] += x
        return tuple(out)

    return Bicharacter.from_function(ctx, d.n, q)


def degree_map_hmax(d: CglDescriptor) -> GradingMap:
    """Degree map onto the character lattice Z^V(A) of the maximal torus."""
    vanishing = d.vanishing
    pos = {k: i for i, k in enumerate(vanishing)}
    r = len(vanishing)
    images: list[tuple[int, ...]] = []
    for k in range(d.n):
        if k in pos:
            images.append(tuple(1 if i == pos[k] else 0 for i in range(r)))
            continue
        w = d.delta_witness[k]
        v = [-x for x in images[w.j]]
        for i, mi in enumerate(w.m):
            if mi:
                v = [a + mi * b for a, b in zip(v, images[i])]
        images.append(tuple(v))
    return GradingMap(IntMatrix.from_rows(images, r))


def grading(d: CglDescriptor) -> GradingMap:
    return d.grading_pi if d.grading_pi is not None else degree_map_hmax(d)


def check_independent_vanishing_degrees(d: CglDescriptor, pi: GradingMap) -> None:
    """Raise unless the degrees of the V(A) variables are Z-linearly independent."""
    rows = [pi.matrix.row(k) for k in d.vanishing]
    if rows and zl.rank(rows, pi.target_rank) != len(rows):
        raise PreconditionError(
            "degrees of the variables with zero derivation are not linearly independent; "
            "the twist formula for CGL extensions does not apply to this grading"
        )


def kernel_vectors(d: CglDescriptor, pi: GradingMap) -> dict[int, Vector]:
    """``b_k = e_k + e_{j_k} - m_k`` for k in N(A), each checked to lie in ``ker pi``."""
    out = {}
    for k, w in d.delta_witness.items():
        b = [0] * d.n
        b[k] += 1
        b[w.j] += 1
        for i, mi in enumerate(w.m):
            b[i] -= mi
        if any(pi(b)):
            raise PreconditionError(
                f"witness for x_{k} is inconsistent with the grading: pi(b_{k}) = {pi(b)} != 0"
            )
        out[k] = tuple(b)
    return out


def _kernel_cross_check(d: CglDescriptor, pi: GradingMap, bs: Mapping[int, Vector]) -> None:
    spanned = zl.lattice(bs.values(), d.n)
    if spanned != pi.kernel():
        raise CrossCheckError("kernel vectors b_k do not span the kernel of the degree map")


def _check_lambda_k(d: CglDescriptor, bs: Mapping[int, Vector]) -> None:
    for k, b in bs.items():
        got = evaluate(d.lam, b, _unit(d.n, k))
        if got != d.lambda_k[k]:
            raise CrossCheckError(
                f"lambda_{k} = {d.lambda_k[k]} but chi'(b_{k}, e_{k}) = {got}"
            )


def _unit(n: int, k: int) -> Vector:
    return tuple(1 if i == k else 0 for i in range(n))


def tw_general(d: CglDescriptor, pi: GradingMap | None = None) -> ScalarSubgroup:
    """``< lambda_k, chi'(b_k, e_i) : k in N(A), i in V(A), i < k >``."""
    pi = pi or grading(d)
    check_independent_vanishing_degrees(d, pi)
    bs = kernel_vectors(d, pi)
    _kernel_cross_check(d, pi, bs)
    _check_lambda_k(d, bs)
    vanishing = d.vanishing
    gens = []
    for k, b in bs.items():
        gens.append(d.lambda_k[k])
        gens.extend(evaluate(d.lam, b, _unit(d.n, i)) for i in vanishing if i < k)
    return generated_subgroup(d.ctx, gens)


def tw_symmetric(d: CglDescriptor) -> ScalarSubgroup:
    """``< lambda_k : k in N(A) >``, valid for symmetric extensions."""
    return generated_subgroup(d.ctx, [d.lambda_k[k] for k in d.nonvanishing])


def tw_kernel_image(d: CglDescriptor, pi: GradingMap | None = None) -> ScalarSubgroup:
    """``< chi'(ker pi, Z^N) >`` computed from a kernel basis of the degree map."""
    pi = pi or grading(d)
    from .bicharacter import image_subgroup

    return image_subgroup(d.lam, pi.kernel())


def tw_cgl(d: CglDescriptor) -> ScalarSubgroup:
    general = tw_general(d)
    if d.symmetric:
        validate_symmetric(d)
        sym = tw_symmetric(d)
        if sym != general:
            raise CrossCheckError(
                f"symmetric formula gives {sym} but the general formula gives {general}"
            )
    return general


def ad_cgl(d: CglDescriptor) -> ScalarSubgroup:
    ad = values_subgroup(d.lam)
    q, _ = cluster_matrix(d)
    if values_subgroup(q) != ad:
        raise CrossCheckError("subgroup generated by the cluster matrix differs from <lambda>")
    return ad


@dataclass
class SymmetryReport:
    checks: list[tuple[int, int, str, str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c[-1] for c in self.checks)

    def failures(self) -> list[str]:
        return [
            f"chi'(b_{k}, e_{j}) = {got}, expected {want}"
            for k, j, got, want, ok in self.checks
            if not ok
        ]


def validate_symmetric(d: CglDescriptor, raise_on_failure: bool = True) -> SymmetryReport:
    """Check the witness shape and the values ``chi'(b_k, e_j)`` of a symmetric extension.

    For each k in N(A): ``j_k = p(k)``, the monomial lives strictly between
    ``p(k)`` and ``k``, and ``chi'(b_k, e_j)`` is ``lambda_k`` at ``j = k``,
    ``lambda_k^-1`` at ``j = p(k)`` and 1 elsewhere.
    """
    p, _ = predecessor(d.eta)
    report = SymmetryReport()
    pi = grading(d)
    bs = kernel_vectors(d, pi)
    for k, w in d.delta_witness.items():
        if p[k] is None:
            raise PreconditionError(f"x_{k} has a nonzero derivation but no predecessor in eta")
        if w.j != p[k]:
            raise PreconditionError(f"witness for x_{k} uses x_{w.j}, predecessor is x_{p[k]}")
        if any(e for i, e in enumerate(w.m) if not p[k] < i < k):
            raise PreconditionError(f"witness monomial for x_{k} is not supported strictly between x_{p[k]} and x_{k}")
        lk = d.lambda_k[k]
        for j in range(d.n):
            want = lk if j == k else lk.inverse() if j == p[k] else d.ctx.one()
            got = evaluate(d.lam, bs[k], _unit(d.n, j))
            report.checks.append((k, j, str(got), str(want), got == want))
    if raise_on_failure and not report.ok:
        raise CrossCheckError("descriptor is not symmetric-consistent: " + "; ".join(report.failures()))
    return report


def to_sandwich(d: CglDescriptor) -> SandwichDescriptor:
    """Sandwich descriptor of the prime-element cluster with grading ``pi @ beta``.

    A supplied grading whose image is a proper direct summand is re-expressed
    on its image so that the grading map is onto.
    """
    q, beta = cluster_matrix(d)
    pi = grading(d)
    phi = GradingMap(beta @ pi.matrix)
    rank, nonzero = zl.saturation_index(phi.matrix)
    if rank != phi.target_rank:
        phi = phi.image_coordinates()
    return SandwichDescriptor(d.ctx, q, phi, d.label, ("cluster of homogeneous prime elements",))


# -- built-in families -------------------------------------------------------


def quantum_matrices(n: int, lam: ScalarElement, p: Mapping[tuple[int, int], ScalarElement], *, label: str = "") -> CglDescriptor:
    """Multiparameter quantum matrices with generators ``X_ij`` in lexicographic order.

    ``p`` gives ``p_ij`` for ``i < j`` (0-based rows); ``p_ji = p_ij^-1``.
    The witness for ``X_lm`` (``l, m > 0``) is ``X_{l-1,m-1}`` with the
    monomial ``X_{l-1,m} X_{l,m-1}``.
    """
    ctx = lam.ctx
    one = ctx.one()

    def pp(a: int, b: int) -> ScalarElement:
        if a == b:
            return one
        return p[(a, b)] if a < b else p[(b, a)].inverse()

    idx = lambda i, j: i * n + j  # noqa: E731
    N = n * n

    def lam_kj(k: int, j: int) -> ScalarElement:
        l, m = divmod(k, n)
        i, jj = divmod(j, n)
        if l > i and m > jj:
            return pp(l, i) * pp(jj, m)
        if l > i:
            return lam * pp(l, i) * pp(jj, m)
        return pp(jj, m)

    lam_mat = Bicharacter.from_function(ctx, N, lambda j, k: lam_kj(k, j).inverse())
    witnesses = {}
    lambda_k = {}
    for l in range(1, n):
        for m in range(1, n):
            k = idx(l, m)
            mono = [0] * k
            mono[idx(l - 1, m)] += 1
            mono[idx(l, m - 1)] += 1
            witnesses[k] = Witness(idx(l - 1, m - 1), tuple(mono))
            lambda_k[k] = lam
    eta = tuple(j - i for i in range(n) for j in range(n))
    return CglDescriptor(ctx, lam_mat, eta, witnesses, lambda_k, None, True, label or f"O_lambda,p(M_{n})")


def generic_quantum_matrices(n: int) -> CglDescriptor:
    names = ["lambda"] + [f"p{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    ctx = ScalarContext.free(*names)
    p = {(i, j): ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
    return quantum_matrices(n, ctx.param("lambda"), p, label=f"O_lambda,p(M_{n})")


def standard_quantum_matrices(n: int, ctx: ScalarContext | None = None) -> CglDescriptor:
    """``lambda = q^-2`` and ``p_ij = q`` for ``i > j``."""
    ctx = ctx or ScalarContext.free("q")
    q = ctx.param("q")
    p = {(i, j): q.inverse() for i in range(n) for j in range(i + 1, n)}
    return quantum_matrices(n, q ** -2, p, label=f"O_q(M_{n})")


def quantized_weyl(
    n: int,
    qs: Sequence[ScalarElement],
    p: Mapping[tuple[int, int], ScalarElement],
    *,
    label: str = "",
    constant_witness: bool = False,
) -> CglDescriptor:
    """Quantized Weyl algebra with generators ordered ``y_n, ..., y_1, x_1, ..., x_n``.

    In this order the extension is symmetric: ``x_j`` has a nonzero derivation
    on ``y_j`` and eigenvalue ``q_j^-1``.  The witness monomial is
    ``y_{j-1} x_{j-1}`` (the term of ``delta(y_j)`` compatible with the
    symmetric shape); ``constant_witness=True`` uses the constant term 1
    instead, which is still a valid witness for the general formula but not
    for the symmetric identities when ``j > 1``.
    """
    if len(qs) != n:
        raise SchemaError(f"expected {n} values q_j")
    ctx = qs[0].ctx
    one = ctx.one()

    def pp(a: int, b: int) -> ScalarElement:
        if a == b:
            return one
        return p[(a, b)] if a < b else p[(b, a)].inverse()

    ypos = lambda a: n - 1 - a  # noqa: E731
    xpos = lambda a: n + a  # noqa: E731
    N = 2 * n
    later = {}  # (later, earlier) -> lambda
    for a in range(n):
        for b in range(a + 1, n):
            later[(ypos(a), ypos(b))] = pp(a, b)
            later[(xpos(b), xpos(a))] = (qs[a] * pp(a, b)).inverse()
    for a in range(n):
        for b in range(n):
            if a < b:
                later[(xpos(a), ypos(b))] = pp(b, a)
            elif a > b:
                later[(xpos(a), ypos(b))] = qs[b] * pp(b, a)
            else:
                later[(xpos(a), ypos(a))] = qs[a]
    lam_mat = Bicharacter.from_function(ctx, N, lambda j, k: later[(k, j)].inverse())
    witnesses = {}
    for a in range(n):
        mono = [0] * xpos(a)
        if a > 0 and not constant_witness:
            mono[ypos(a - 1)] += 1
            mono[xpos(a - 1)] += 1
        witnesses[xpos(a)] = Witness(ypos(a), tuple(mono))
    lambda_k = {xpos(a): qs[a].inverse() for a in range(n)}
    eta = tuple([n - s for s in range(n)] + [a + 1 for a in range(n)])
    symmetric = not constant_witness or n == 1
    return CglDescriptor(ctx, lam_mat, eta, witnesses, lambda_k, None, symmetric, label or f"A_{n}^Q,P")


def generic_quantized_weyl(n: int, *, constant_witness: bool = False) -> CglDescriptor:
    names = [f"q{j + 1}" for j in range(n)] + [f"p{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    ctx = ScalarContext.free(*names)
    qs = [ctx.param(f"q{j + 1}") for j in range(n)]
    p = {(i, j): ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
    return quantized_weyl(n, qs, p, constant_witness=constant_witness)


def quantized_weyl_sandwich(n: int, qs: Sequence[ScalarElement], p: Mapping[tuple[int, int], ScalarElement], *, label: str = "") -> SandwichDescriptor:
    """Cluster ``z_1..z_n, y_1..y_n`` of the quantized Weyl algebra with its Z^n grading.

    ``z_k`` has degree 0 and ``y_k`` degree ``-e_k``.
    """
    ctx = qs[0].ctx
    one = ctx.one()

    def value(i: int, j: int) -> ScalarElement:
        if i < n and j < n:
            return one
        if i >= n and j >= n:
            a, b = i - n, j - n
            return p[(a, b)] if a < b else p[(b, a)].inverse()
        k, jj = i, j - n  # z_k against y_jj
        return qs[jj] if jj <= k else one

    chi = Bicharacter.from_function(ctx, 2 * n, value)
    rows = [[0] * n for _ in range(n)] + [[-1 if c == j else 0 for c in range(n)] for j in range(n)]
    phi = GradingMap(IntMatrix.from_rows(rows, n))
    return SandwichDescriptor(ctx, chi, phi, label or f"A_{n}^Q,P (z,y cluster)")


def quantum_affine(chi: Bicharacter, *, label: str = "") -> CglDescriptor:
    """Quantum affine space as a CGL extension: no derivations, injective ``eta``."""
    n = chi.n
    return CglDescriptor(chi.ctx, chi, tuple(range(n)), {}, {}, None, True, label or f"O_q(K^{n})")


def standard_quantum_affine_chi(n: int, ctx: ScalarContext | None = None) -> Bicharacter:
    """``y_i y_j = q y_j y_i`` for ``i < j``."""
    ctx = ctx or ScalarContext.free("q")
    q = ctx.param("q")
    return Bicharacter.from_function(ctx, n, lambda i, j: q)


def quantum_affine_sandwich(chi: Bicharacter, phi: GradingMap | None = None, *, label: str = "") -> SandwichDescriptor:
    return SandwichDescriptor(chi.ctx, chi, phi or GradingMap.identity(chi.n), label or f"O_q(K^{chi.n})")


BUILTIN_KINDS = ("quantum_matrices", "quantized_weyl", "quantum_affine")


def builtin_descriptor(kind: str, size: int, parameters: Mapping | None = None) -> CglDescriptor:
    """Generic-parameter built-ins: ``quantum_matrices``, ``quantized_weyl``, ``quantum_affine``.

    ``parameters`` may carry ``{"standard": True}`` for standard quantum
    matrices, or ``{"chi": Bicharacter}`` for quantum affine space.
    """
    parameters = dict(parameters or {})
    if kind == "quantum_matrices":
        return standard_quantum_matrices(size) if parameters.get("standard") else generic_quantum_matrices(size)
    if kind == "quantized_weyl":
        return generic_quantized_weyl(size)
    if kind == "quantum_affine":
        chi = parameters.get("chi") or standard_quantum_affine_chi(size)
        return quantum_affine(chi)
    raise SchemaError(f"unsupported built-in kind {kind!r}; choose from {BUILTIN_KINDS}")


def twist_cgl(d: CglDescriptor, phi: GradingMap, csharp) -> CglDescriptor:
    """Twist the commutation data by a cocycle class on the grading group of ``phi``.

    Every ``b_k`` must lie in ``ker phi`` so that the eigenvalues ``lambda_k``
    and the witnesses carry over unchanged.
    """
    from dataclasses import replace

    from .bicharacter import twist_bicharacter

    if phi.source_rank != d.n:
        raise PreconditionError("grading map must have one row per variable")
    for k, b in kernel_vectors(d, grading(d)).items():
        if any(phi(b)):
            raise PreconditionError(f"x_{k} has a nonzero derivation that is not homogeneous for this grading")
    return replace(d, lam=twist_bicharacter(d.lam, phi.matrix, csharp), label=f"{d.label}^c" if d.label else "")


def quantum_matrices_grading(n: int) -> GradingMap:
    """``X_ij`` in degree ``(e_i, e_j)`` of Z^n x Z^n."""
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (2 * n)
            row[i] = 1
            row[n + j] = 1
            rows.append(row)
    return GradingMap(IntMatrix.from_rows(rows, 2 * n))


def p_eliminating_cocycle(n: int, p: Mapping[tuple[int, int], ScalarElement]):
    """Class of ``c((s,t),(s',t')) = prod_{i<j} p_ij^(s_j s'_i - t_j t'_i)`` on Z^n x Z^n."""
    from .bicharacter import CocycleClass

    ctx = next(iter(p.values())).ctx if p else ScalarContext.free()
    r = 2 * n

    def c(u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * ctx.m
        for i in range(n):
            for j in range(i + 1, n):
                k = u[j] * v[i] - u[n + j] * v[n + i]
                for t, x in enumerate(p[(i, j)].exponents):
                    out[t] += k * x
        return out

    units = zl.unit_rows(r)
    sharp = Bicharacter.from_function(
        ctx, r, lambda a, b: tuple(x - y for x, y in zip(c(units[a], units[b]), c(units[b], units[a])))
    )
    return CocycleClass(sharp)
