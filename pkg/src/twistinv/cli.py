"""Command-line entry point: ``twistinv COMMAND DESCRIPTOR [options]``.

A descriptor argument is a JSON file path or ``builtin:KIND:N`` with KIND one of
quantum_matrices, quantized_weyl, quantum_affine.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cgl as cglmod
from . import report as rep
from .cluster import ad_invariant, apply_twist, block_killing_cocycle, tw_invariant
from .descriptors import Descriptor, builtin_json, load_cocycle_file, load_descriptor, load_file
from .errors import CrossCheckError, PreconditionError, SchemaError, TwistInvError
from .ore import (
    ad_bruteforce,
    check_lambda_against_presentation,
    quantum_matrices_presentation,
    twisted_commutation_matrix,
    verify_weyl_normal_elements,
)
from .schubert import cartan_type, parse_word, reduced_words, schubert_invariants
from .suite import CORRUPTIONS, render_text as render_suite, reproduce_examples

EXIT_OK, EXIT_DIFFER, EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_CROSSCHECK = 0, 1, 2, 3, 4
MAX_ORACLE_RADIUS = 3


def resolve(arg: str) -> Descriptor:
    if arg.startswith("builtin:"):
        parts = arg.split(":")
        if len(parts) != 3 or not parts[2].isdigit() or int(parts[2]) < 1:
            raise SchemaError(f"{arg}: expected builtin:KIND:N with N >= 1")
        return load_descriptor(builtin_json(parts[1], int(parts[2])), arg)
    return load_file(arg)


def _invariants_subset(d: Descriptor, keys: Sequence[str]) -> dict[str, Any]:
    full = rep.invariants(d)
    return {k: full[k] for k in ("label", "kind", "context", *keys, "provenance") if k in full}


def cmd_ad(args) -> tuple[dict, int]:
    return _invariants_subset(resolve(args.descriptor), ("ad", "pi")), EXIT_OK


def cmd_tw(args) -> tuple[dict, int]:
    return _invariants_subset(resolve(args.descriptor), ("tw", "classification", "schubert")), EXIT_OK


def cmd_invariants(args) -> tuple[dict, int]:
    return rep.invariants(resolve(args.descriptor)), EXIT_OK


def cmd_twist(args) -> tuple[dict, int]:
    d = resolve(args.descriptor)
    cocycles = list(d.cocycles)
    if args.cocycle:
        cocycles += load_cocycle_file(args.cocycle, d.ctx)
    if not cocycles:
        raise SchemaError("no cocycle given: pass --cocycle FILE or list 'cocycles' in the descriptor")
    return rep.twist_report(d, cocycles), EXIT_OK


def cmd_extend(args) -> tuple[dict, int]:
    if args.vars < 0:
        raise SchemaError("--vars must be nonnegative")
    return rep.extend_report(resolve(args.descriptor), args.vars), EXIT_OK


def cmd_schubert(args) -> tuple[dict, int]:
    if args.sweep is not None:
        if not args.type:
            raise SchemaError("--sweep needs --type")
        c = cartan_type(args.type)
        rows = [rep.schubert_json(schubert_invariants(c, w)) for w in reduced_words(c, args.sweep)]
        bad = [r for r in rows if not r["closed_form_agrees"]]
        return {
            "type": c.name,
            "max_length": args.sweep,
            "words": len(rows),
            "closed_form_disagreements": len(bad),
            "disagreeing_words": [r["word"] for r in bad],
        }, EXIT_OK
    if args.descriptor:
        d = resolve(args.descriptor)
        if d.kind != "schubert":
            raise SchemaError(f"{args.descriptor}: not a schubert descriptor")
        c, w = d.cartan, d.word
    else:
        if not args.type or args.word is None:
            raise SchemaError("schubert needs a descriptor or --type and --word")
        c, w = cartan_type(args.type), parse_word(args.word)
    s = schubert_invariants(c, w)
    return {"type": c.name, "gcm": [list(r) for r in c.gcm], "norms": list(c.norms), **rep.schubert_json(s)}, EXIT_OK


def cmd_oracle(args) -> tuple[dict, int]:
    if not 0 <= args.radius <= MAX_ORACLE_RADIUS:
        raise SchemaError(f"--radius must lie in [0, {MAX_ORACLE_RADIUS}]")
    d = resolve(args.descriptor)
    s = rep.primary_sandwich(d)
    brute = ad_bruteforce(s.chi, args.radius)
    formula = ad_invariant(s)
    if not brute <= formula:
        raise CrossCheckError(f"brute-force commutators {brute} escape <chi(e_i, e_j)> = {formula}")
    out: dict[str, Any] = {
        "label": d.label,
        "radius": args.radius,
        "bruteforce": rep.subgroup_json(brute),
        "formula": rep.subgroup_json(formula),
        "saturated": brute == formula,
    }
    if args.radius >= 1 and brute != formula:
        raise CrossCheckError(f"radius-{args.radius} oracle gives {brute}, formula gives {formula}")
    checked = 0
    for c in d.cocycles:
        if twisted_commutation_matrix(s.chi, s.phi, c) != apply_twist(s, c).chi:
            raise CrossCheckError("twisted product commutation matrix differs from the twisted bicharacter")
        checked += 1
    out["twisted_products_checked"] = checked
    return out, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    d = resolve(args.descriptor)
    checks: list[str] = []
    inv = rep.invariants(d)
    checks.extend(inv["provenance"])
    if d.cgl is not None and d.cgl.symmetric:
        cglmod.validate_symmetric(d.cgl)
        checks.append("symmetric CGL identities hold")
    if d.kind == "quantum_matrices" and d.family["n"] <= 3:
        pres = quantum_matrices_presentation(d.family["n"], d.family["lambda"], d.family["p"])
        bad = check_lambda_against_presentation(pres, d.cgl.lam)
        if bad:
            raise CrossCheckError(f"lambda entries disagree with straightened products at {[(k + 1, j + 1) for k, j in bad]}")
        checks.append("lambda matrix matches straightened generator products")
    if d.kind == "weyl" and d.family["n"] <= 2:
        r = verify_weyl_normal_elements(d.family["n"], d.family["q"], d.family["p"])
        checks.append(f"{len(r.checks)} normal-element relations hold")
    s = rep.primary_sandwich(d)
    tw = tw_invariant(s)
    for c in d.cocycles:
        if tw_invariant(apply_twist(s, c)) != tw:
            raise CrossCheckError("a listed cocycle twist changed tw")
    if d.cocycles:
        checks.append(f"tw unchanged under {len(d.cocycles)} listed twists")
    killed = ad_invariant(apply_twist(s, block_killing_cocycle(s)))
    if killed != tw:
        raise CrossCheckError(f"block-killing twist has AD {killed}, expected tw = {tw}")
    checks.append("block-killing twist attains AD = tw")
    if s.n <= 4:
        brute = ad_bruteforce(s.chi, 1)
        if brute != ad_invariant(s):
            raise CrossCheckError(f"radius-1 oracle gives {brute}, formula gives {ad_invariant(s)}")
        checks.append("radius-1 commutator oracle reproduces AD")
    return {"label": d.label, "ad": inv["ad"], "tw": inv["tw"], "checks": checks, "ok": True}, EXIT_OK


def cmd_compare(args) -> tuple[dict, int]:
    a, b = resolve(args.descriptor), resolve(args.other)
    ia, ib = rep.invariants(a), rep.invariants(b)
    if ia["context"] != ib["context"]:
        raise PreconditionError(
            f"descriptors use different scalar contexts ({ia['context']['params']} vs {ib['context']['params']}); "
            "tw subgroups are only comparable over one context"
        )
    same = ia["tw"]["lattice"] == ib["tw"]["lattice"]
    out = {
        "first": {"label": ia["label"], "tw": ia["tw"]},
        "second": {"label": ib["label"], "tw": ib["tw"]},
        "tw_equal": same,
        "verdict": "tw agrees; no obstruction found" if same else "tw differs; the algebras are not cocycle twists of each other",
    }
    return out, EXIT_OK if same else EXIT_DIFFER


def cmd_reproduce(args) -> tuple[dict, int]:
    r = reproduce_examples(args.corrupt)
    return r.json(), EXIT_OK if r.ok else EXIT_DIFFER


def cmd_builtin(args) -> tuple[dict, int]:
    if args.n < 1:
        raise SchemaError("N must be at least 1")
    return builtin_json(args.kind, args.n), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistinv", description="AD and cocycle-twist invariants of graded quantum algebras.")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--json-out", metavar="FILE", help="also write the JSON report to FILE")
    sub = p.add_subparsers(dest="command", required=True)

    def with_desc(name: str, fn, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("descriptor", help="descriptor JSON file or builtin:KIND:N")
        sp.set_defaults(func=fn)
        return sp

    with_desc("ad", cmd_ad, "Alev-Dumas invariant and PI test")
    with_desc("tw", cmd_tw, "twist invariant and classification")
    with_desc("invariants", cmd_invariants, "full invariant report")
    with_desc("twist", cmd_twist, "apply cocycle twists and confirm tw is unchanged").add_argument("--cocycle", metavar="FILE")
    with_desc("extend", cmd_extend, "invariants of the polynomial extension A[x_1..x_s]").add_argument("--vars", type=int, default=1)
    oracle = with_desc("oracle", cmd_oracle, "brute-force commutator oracle on a box of exponents")
    oracle.add_argument("--radius", type=int, default=1)
    with_desc("verify", cmd_verify, "run every available cross-check")
    cmp_ = with_desc("compare", cmd_compare, "compare tw of two descriptors (exit 1 if they differ)")
    cmp_.add_argument("other", help="second descriptor")

    sch = sub.add_parser("schubert", help="quantum Schubert cell invariants")
    sch.add_argument("descriptor", nargs="?")
    sch.add_argument("--type", help="Cartan type such as A3, B2, G2")
    sch.add_argument("--word", help="1-based reduced word, e.g. 2,1,2")
    sch.add_argument("--sweep", type=int, metavar="L", help="all reduced words of length <= L")
    sch.set_defaults(func=cmd_schubert)

    r = sub.add_parser("reproduce", help="run the worked-example suite")
    r.add_argument("--corrupt", choices=CORRUPTIONS, help="inject a known fault (negative control)")
    r.set_defaults(func=cmd_reproduce)

    b = sub.add_parser("builtin", help="print a built-in descriptor as JSON")
    b.add_argument("kind", choices=cglmod.BUILTIN_KINDS)
    b.add_argument("n", type=int)
    b.set_defaults(func=cmd_builtin)
    return p


def _render_text(command: str, obj: dict) -> str:
    if command == "reproduce":
        return render_suite(obj)
    return rep.to_text(obj) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK
    try:
        obj, status = args.func(args)
    except SchemaError as exc:
        print(f"error: schema: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except PreconditionError as exc:
        print(f"error: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CrossCheckError as exc:
        print(f"error: cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except TwistInvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = rep.to_json(obj)
    if args.json_out:
        Path(args.json_out).write_text(text, encoding="utf-8")
    sys.stdout.write(text if args.json else _render_text(args.command, obj))
    return status


if __name__ == "__main__":
    sys.exit(main())
