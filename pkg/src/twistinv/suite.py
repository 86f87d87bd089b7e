"""Reproduction suite: the worked examples, each checked against its stated value."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable

from . import cgl as C
from . import zlattice as zl
from .bicharacter import Bicharacter, CocycleClass, image_subgroup
from .cluster import (
    GradingMap,
    SandwichDescriptor,
    ad_invariant,
    apply_twist,
    block_killing_cocycle,
    classify,
    is_pi,
    polynomial_extend,
    tw_invariant,
)
from .errors import TwistInvError
from .ore import ad_bruteforce, quantized_weyl_presentation, straighten, verify_weyl_normal_elements
from .scalargroup import ScalarContext, generated_subgroup, is_cyclic
from .schubert import cartan_type, reduced_words, schubert_invariants

CORRUPTIONS = ("quantum_matrices_lambda",)


@dataclass(frozen=True)
class Row:
    name: str
    expected: str
    got: str

    @property
    def ok(self) -> bool:
        return self.expected == self.got


@dataclass
class SuiteReport:
    rows: list[Row] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.ok]

    def text(self) -> str:
        return render_text(self.json())

    def json(self) -> dict:
        return {
            "rows": [{"name": r.name, "expected": r.expected, "got": r.got, "ok": r.ok} for r in self.rows],
            "passed": sum(r.ok for r in self.rows),
            "total": len(self.rows),
        }


def render_text(summary: dict) -> str:
    """Text form of :meth:`SuiteReport.json`."""
    lines = []
    for r in summary["rows"]:
        if r["ok"]:
            lines.append(f"PASS  {r['name']}: {r['got']}")
        else:
            lines.append(f"FAIL  {r['name']}: expected {r['expected']}, got {r['got']}")
    lines.append(f"{summary['passed']}/{summary['total']} examples reproduced")
    return "\n".join(lines) + "\n"


def _qm(n: int, corrupt: str | None) -> C.CglDescriptor:
    d = C.generic_quantum_matrices(n)
    if corrupt == "quantum_matrices_lambda":
        lam = d.lam
        bad = Bicharacter.from_upper(
            d.ctx, lam.n, {**lam.upper(), (0, lam.n - 1): d.lam.value(0, lam.n - 1) * d.ctx.param("p12")}
        )
        d = replace(d, lam=bad)
    return d


def _weyl_parts(n: int):
    d = C.generic_quantized_weyl(n)
    qs = [d.ctx.param(f"q{j + 1}") for j in range(n)]
    p = {(i, j): d.ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
    return d, qs, p


def _std_affine(n: int, ctx: ScalarContext | None = None) -> SandwichDescriptor:
    chi = C.standard_quantum_affine_chi(n, ctx)
    return C.quantum_affine_sandwich(chi)


def _examples(corrupt: str | None) -> list[tuple[str, str, Callable[[], str]]]:
    q_ctx = ScalarContext.free("q")
    q = q_ctx.param("q")

    def weyl_kernel() -> str:
        _, qs, p = _weyl_parts(2)
        s = C.quantized_weyl_sandwich(2, qs, p)
        return str([list(r) for r in s.phi.kernel().basis])

    def not_cyclic() -> str:
        ctx = ScalarContext.free("q1", "q2")
        return str(is_cyclic(generated_subgroup(ctx, [ctx.param("q1"), ctx.param("q2")])))

    def qaff_as_twist() -> str:
        ctx = ScalarContext.free("q12", "q13", "q23")
        target = Bicharacter.from_upper(ctx, 3, {(0, 1): ctx.param("q12"), (0, 2): ctx.param("q13"), (1, 2): ctx.param("q23")})
        poly = SandwichDescriptor(ctx, Bicharacter.trivial(ctx, 3), GradingMap.identity(3))
        return str(apply_twist(poly, CocycleClass(target)).chi == target)

    def weyl1_image() -> str:
        _, qs, p = _weyl_parts(1)
        s = C.quantized_weyl_sandwich(1, qs, p)
        return image_subgroup(s.chi, zl.lattice([(1, 0)], 2)).describe()

    def weyl_sandwich(n: int) -> Callable[[], str]:
        def run() -> str:
            _, qs, p = _weyl_parts(n)
            return tw_invariant(C.quantized_weyl_sandwich(n, qs, p)).describe()

        return run

    def weyl_cgl(n: int) -> Callable[[], str]:
        return lambda: C.tw_cgl(_weyl_parts(n)[0]).describe()

    def qm_ad(n: int) -> Callable[[], str]:
        return lambda: C.ad_cgl(_qm(n, corrupt)).describe()

    def qm_tw(n: int) -> Callable[[], str]:
        return lambda: C.tw_cgl(_qm(n, corrupt)).describe()

    def qm_sandwich_ad() -> str:
        return ad_invariant(C.to_sandwich(_qm(2, corrupt))).describe()

    def qm_class() -> str:
        return classify(C.tw_cgl(_qm(2, corrupt))).value

    def p_elim(n: int) -> Callable[[], str]:
        def run() -> str:
            d = _qm(n, corrupt)
            p = {(i, j): d.ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
            t = C.twist_cgl(d, C.quantum_matrices_grading(n), C.p_eliminating_cocycle(n, p))
            one = {(i, j): d.ctx.one() for i in range(n) for j in range(i + 1, n)}
            return str(t.lam == C.quantum_matrices(n, d.ctx.param("lambda"), one).lam)

        return run

    def std_qm(n: int, what: str) -> Callable[[], str]:
        def run() -> str:
            d = C.standard_quantum_matrices(n)
            return (C.ad_cgl(d) if what == "ad" else C.tw_cgl(d)).describe()

        return run

    def weyl_class() -> str:
        return classify(C.tw_cgl(_weyl_parts(2)[0])).value

    def qaff_class() -> str:
        return classify(tw_invariant(_std_affine(3))).value

    def extend_weyl(what: str) -> Callable[[], str]:
        def run() -> str:
            _, qs, p = _weyl_parts(2)
            s = C.quantized_weyl_sandwich(2, qs, p)
            e = polynomial_extend(s, 1)
            f = tw_invariant if what == "tw" else ad_invariant
            return str(f(e) == f(s)) + " " + f(e).describe()

        return run

    def ad_qaff(n: int) -> Callable[[], str]:
        return lambda: ad_invariant(_std_affine(n)).describe()

    def tw_identity() -> str:
        return tw_invariant(_std_affine(4)).describe()

    def tw_z_grading() -> str:
        s = _std_affine(3)
        z = GradingMap.from_rows([[1], [2], [1]], 1)
        return tw_invariant(replace(s, phi=z)).describe()

    def schubert_a2() -> str:
        return schubert_invariants(cartan_type("A2"), (0, 1, 0)).tw.describe()

    def schubert_sweep() -> str:
        bad = []
        for t in ("A2", "A3", "B2", "G2"):
            c = cartan_type(t)
            for w in reduced_words(c, 6):
                s = schubert_invariants(c, w)
                if not s.closed_form_agrees:
                    bad.append(f"{t}:{''.join(str(i + 1) for i in w)}")
        return f"{len(bad)} counterexamples" + (f" (first: {', '.join(bad[:3])})" if bad else "")

    def twist_invariance() -> str:
        rnd = random.Random(7)
        d = C.to_sandwich(_qm(2, corrupt))
        tw = tw_invariant(d)
        for _ in range(10):
            sharp = Bicharacter.from_function(d.ctx, d.r, lambda i, j: [rnd.randint(-3, 3) for _ in range(d.ctx.m)])
            if tw_invariant(apply_twist(d, CocycleClass(sharp))) != tw:
                return "changed"
        killed = apply_twist(d, block_killing_cocycle(d))
        return f"unchanged; block-killing twist has AD {ad_invariant(killed).describe()}"

    def weyl_straighten() -> str:
        pres = quantized_weyl_presentation(1, [q], {})
        return straighten(pres, [1, 0]).format(pres.names)

    def weyl_normal(n: int) -> Callable[[], str]:
        def run() -> str:
            _, qs, p = _weyl_parts(n)
            rep = verify_weyl_normal_elements(n, qs, p, raise_on_failure=False)
            return f"{sum(ok for _, ok in rep.checks)}/{len(rep.checks)} relations hold"

        return run

    def pi_torsion() -> str:
        ctx = ScalarContext.with_relations(["q"], [[6]])
        r = is_pi(_std_affine(2, ctx))
        return f"{r.is_pi} {r.card_ad}"

    def oracle_qaff() -> str:
        return ad_bruteforce(C.standard_quantum_affine_chi(2), 1).describe()

    def pi_free() -> str:
        return str(is_pi(_std_affine(2)).is_pi)

    return [
        ("kernel of the quantized Weyl grading, n=2", "[[1, 0, 0, 0], [0, 1, 0, 0]]", weyl_kernel),
        ("<q1, q2> over independent parameters is cyclic", "False", not_cyclic),
        ("polynomial ring twisted by the class q is O_q(K^3)", "True", qaff_as_twist),
        ("chi(Z e_1, Z^2) for the quantized Weyl cluster, n=1", "<q1>", weyl1_image),
        ("AD(O_q(K^3))", "<q>", ad_qaff(3)),
        ("AD of the prime-element cluster of O_lambda,p(M_2)", "<lambda, p12>", qm_sandwich_ad),
        ("tw of O_q(K^4) under its Z^4 grading", "<1>", tw_identity),
        ("tw of O_q(K^3) under a Z-grading", "<q>", tw_z_grading),
        *[(f"tw of A_{n}^Q,P via the quantum cluster", "<" + ", ".join(f"q{j + 1}" for j in range(n)) + ">", weyl_sandwich(n)) for n in (1, 2, 3)],
        *[(f"tw of A_{n}^Q,P via the symmetric CGL presentation", "<" + ", ".join(f"q{j + 1}" for j in range(n)) + ">", weyl_cgl(n)) for n in (1, 2, 3)],
        ("classification of O_q(K^3)", "twist-trivial", qaff_class),
        ("classification of O_lambda,p(M_2)", "essentially-uniparameter", qm_class),
        ("classification of A_2^Q,P", "truly-multiparameter", weyl_class),
        *[(f"O_lambda,p(M_{n}) twisted by the p-eliminating cocycle is O_lambda,1(M_{n})", "True", p_elim(n)) for n in (2, 3)],
        ("tw of A_2^Q,P[x]", "True <q1, q2>", extend_weyl("tw")),
        ("AD of A_2^Q,P[x]", "True <q1, q2, p12>", extend_weyl("ad")),
        ("AD(O_lambda,p(M_2))", "<lambda, p12>", qm_ad(2)),
        ("AD(O_lambda,p(M_3))", "<lambda, p12, p13, p23>", qm_ad(3)),
        ("tw(O_lambda,p(M_2))", "<lambda>", qm_tw(2)),
        ("tw(O_lambda,p(M_3))", "<lambda>", qm_tw(3)),
        ("AD(O_q(M_2))", "<q>", std_qm(2, "ad")),
        ("tw(O_q(M_2))", "<q^2>", std_qm(2, "tw")),
        ("AD(O_q(M_3))", "<q>", std_qm(3, "ad")),
        ("tw of U_q^-[w] for A2, w = s1 s2 s1", "<q^2>", schubert_a2),
        ("tw_Q(U_q^-[w]) = <q^d(w)> over reduced words of length <= 6 in A2, A3, B2, G2", "0 counterexamples", schubert_sweep),
        ("tw of the O_lambda,p(M_2) cluster under 10 random twists", "unchanged; block-killing twist has AD <lambda>", twist_invariance),
        ("x y in A_1^q", "1 + q*y1*x1", weyl_straighten),
        ("normal elements z_k of A_1^Q,P", "2/2 relations hold", weyl_normal(1)),
        ("normal elements z_k of A_2^Q,P", "9/9 relations hold", weyl_normal(2)),
        ("PI test for O_q(K^2) with q^6 = 1", "True 6", pi_torsion),
        ("PI test for O_q(K^2) with q generic", "False", pi_free),
        ("commutator oracle for O_q(K^2) at radius 1", "<q>", oracle_qaff),
    ]


def reproduce_examples(corrupt: str | None = None) -> SuiteReport:
    """Run every worked example; ``corrupt`` injects a known fault (negative control)."""
    if corrupt is not None and corrupt not in CORRUPTIONS:
        raise ValueError(f"unknown corruption {corrupt!r}; choose from {CORRUPTIONS}")
    report = SuiteReport()
    for name, expected, fn in _examples(corrupt):
        try:
            got = fn()
        except TwistInvError as exc:
            got = f"error: {type(exc).__name__}: {exc}"
        report.rows.append(Row(name, expected, got))
    return report
