"""Invariant reports for descriptors, as ordered dictionaries and plain text."""

from __future__ import annotations

import json
from typing import Any

from . import cgl as cglmod
from .cluster import (
    SandwichDescriptor,
    ad_invariant,
    apply_twist,
    classify,
    is_pi,
    polynomial_extend,
    tw_invariant,
)
from .descriptors import Descriptor
from .errors import CrossCheckError, PreconditionError
from .scalargroup import INFINITE, ScalarSubgroup, cardinality
from .schubert import schubert_invariants, to_cgl


def subgroup_json(g: ScalarSubgroup) -> dict[str, Any]:
    card = cardinality(g)
    return {
        "generators": [str(x) for x in g.generators()],
        "display": g.describe(),
        "invariant_factors": list(g.invariant_factors()),
        "order": "infinite" if card == INFINITE else int(card),
        "lattice": [list(r) for r in g.lattice.basis],
    }


def context_json(d: Descriptor) -> dict[str, Any]:
    return {"params": list(d.ctx.params), "relations": [list(r) for r in d.ctx.relations.basis]}


def _cgl_tw(c: cglmod.CglDescriptor, notes: list[str]) -> ScalarSubgroup:
    tw = cglmod.tw_cgl(c)
    notes.append("tw: CGL formula over the maximal-torus grading" if c.grading_pi is None else "tw: CGL formula over the supplied grading")
    if c.symmetric:
        notes.append("tw: symmetric formula <lambda_k> agrees with the general formula")
    kernel_route = cglmod.tw_kernel_image(c)
    if kernel_route != tw:
        raise CrossCheckError(f"kernel-image route gives {kernel_route}, CGL formula gives {tw}")
    if c.grading_pi is None:
        via = tw_invariant(cglmod.to_sandwich(c))
        if via != tw:
            raise CrossCheckError(f"prime-element cluster gives {via}, CGL formula gives {tw}")
        notes.append("tw: matches <chi(ker phi, Z^N)> on the cluster of homogeneous prime elements")
    return tw


def invariants(d: Descriptor) -> dict[str, Any]:
    """AD and tw with classification and provenance notes."""
    notes: list[str] = []
    out: dict[str, Any] = {"label": d.label, "kind": d.kind, "context": context_json(d)}
    if d.kind == "schubert":
        assert d.cartan is not None and d.word is not None
        s = schubert_invariants(d.cartan, d.word)
        c = to_cgl(d.cartan, d.word)
        out.update(
            ad=subgroup_json(cglmod.ad_cgl(c)),
            tw=subgroup_json(s.tw),
            classification=classify(s.tw).value,
            schubert=schubert_json(s),
        )
        out["context"] = {"params": list(c.ctx.params), "relations": []}
        notes.append("tw: CGL formula over the root-lattice grading; maximal-torus grading gives the same subgroup")
        if not s.closed_form_agrees:
            notes.append(f"tw differs from <q^d(w)> = {s.tw_closed_form}: letters occurring once contribute no generator")
        out["provenance"] = notes
        return out
    if d.kind == "quantum_affine" and d.sandwich is not None and d.sandwich.phi.matrix != cglmod.GradingMap.identity(d.sandwich.n).matrix:
        ad, tw = ad_invariant(d.sandwich), tw_invariant(d.sandwich)
        notes.append("tw: <chi(ker phi, Z^N)> for the supplied grading")
    elif d.cgl is not None:
        ad = cglmod.ad_cgl(d.cgl)
        notes.append("AD: generated by the lambda entries; equals the subgroup of the prime-element cluster matrix")
        tw = _cgl_tw(d.cgl, notes)
        if d.sandwich is not None:
            tw_s = tw_invariant(d.sandwich)
            if tw_s != tw:
                raise CrossCheckError(f"quantum-cluster route gives {tw_s}, CGL route gives {tw}")
            if ad_invariant(d.sandwich) != ad:
                raise CrossCheckError("AD of the quantum cluster differs from <lambda>")
            notes.append("tw: quantum-cluster route <chi(ker phi, Z^N)> agrees")
    else:
        assert d.sandwich is not None
        ad, tw = ad_invariant(d.sandwich), tw_invariant(d.sandwich)
        notes.append("AD: <chi(e_i, e_j)>")
        notes.append("tw: <chi(ker phi, Z^N)>")
    pi = is_pi(primary_sandwich(d))
    out.update(
        ad=subgroup_json(ad),
        tw=subgroup_json(tw),
        classification=classify(tw).value,
        pi={"is_pi": pi.is_pi, "card_ad": "infinite" if pi.card_ad == INFINITE else int(pi.card_ad)},
    )
    out["provenance"] = notes
    return out


def primary_sandwich(d: Descriptor) -> SandwichDescriptor:
    """The quantum-cluster form used for twisting, extension and oracles."""
    if d.sandwich is not None:
        return d.sandwich
    if d.cgl is not None:
        return cglmod.to_sandwich(d.cgl)
    if d.cartan is not None and d.word is not None:
        return cglmod.to_sandwich(to_cgl(d.cartan, d.word, grading="hmax"))
    raise PreconditionError("descriptor has no quantum-cluster form")


def schubert_json(s) -> dict[str, Any]:
    return {
        "word": [i + 1 for i in s.word],
        "betas": [list(b) for b in s.betas],
        "lambda_k": [f"q^{e}" for e in s.lambda_exponents],
        "support": [i + 1 for i in s.support],
        "repeated_letters": [i + 1 for i in s.repeated_letters],
        "d_of_w": s.d_of_w,
        "tw_root_lattice_grading": s.tw.describe(),
        "tw_maximal_torus_grading": s.tw_hmax.describe(),
        "tw_closed_form": s.tw_closed_form.describe(),
        "closed_form_agrees": s.closed_form_agrees,
    }


def twist_report(d: Descriptor, cocycles) -> dict[str, Any]:
    s = primary_sandwich(d)
    before = tw_invariant(s)
    rows = []
    for c in cocycles:
        t = apply_twist(s, c)
        tw_t = tw_invariant(t)
        if tw_t != before:
            raise CrossCheckError(f"twist changed tw from {before} to {tw_t}")
        rows.append({"ad": subgroup_json(ad_invariant(t)), "tw": subgroup_json(tw_t)})
    return {"label": d.label, "tw_before": subgroup_json(before), "ad_before": subgroup_json(ad_invariant(s)), "twists": rows}


def extend_report(d: Descriptor, s_vars: int) -> dict[str, Any]:
    s = primary_sandwich(d)
    e = polynomial_extend(s, s_vars)
    ad0, tw0, ad1, tw1 = ad_invariant(s), tw_invariant(s), ad_invariant(e), tw_invariant(e)
    if ad0 != ad1 or tw0 != tw1:
        raise CrossCheckError("polynomial extension changed AD or tw")
    return {"label": e.label, "vars": s_vars, "ad": subgroup_json(ad1), "tw": subgroup_json(tw1), "classification": classify(tw1).value}


def to_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def to_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if "display" in obj and "invariant_factors" in obj:
            return f"{obj['display']}  (factors {obj['invariant_factors']}, order {obj['order']})"
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict) and not ("display" in v and "invariant_factors" in v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{pad}{k}:")
                for i, item in enumerate(v):
                    lines.append(f"{pad}  [{i + 1}]")
                    lines.append(to_text(item, indent + 2))
            elif isinstance(v, list) and v and all(isinstance(x, str) for x in v) and k in ("provenance", "notes", "checks"):
                lines.append(f"{pad}{k}:")
                lines.extend(f"{pad}  - {x}" for x in v)
            else:
                lines.append(f"{pad}{k}: {to_text(v) if isinstance(v, dict) else v}")
        return "\n".join(lines)
    return f"{pad}{obj}"
