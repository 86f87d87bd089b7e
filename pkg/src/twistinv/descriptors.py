"""JSON descriptor files.

A descriptor declares a scalar context and exactly one algebra payload::

    {
      "version": 1,
      "label": "O_q(K^3)",
      "params": ["q"],
      "relations": [[6]],
      "quantum_affine": {"n": 3, "q": "q"},
      "cocycles": [{"sharp": [["q"], []]}]
    }

Payload keys: ``sandwich``, ``cgl``, ``weyl``, ``quantum_matrices``,
``quantum_affine``, ``schubert``.  A file with top-level ``chi`` and ``phi`` is
read as a sandwich.  Scalars are monomial strings (``"lambda*p12^-1"``) or
exponent lists.  Bicharacters are upper-triangular: row ``i`` lists the values
``chi(e_i, e_j)`` for ``j > i``.  Variable indices are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .bicharacter import Bicharacter, CocycleClass
from .cgl import (
    CglDescriptor,
    Witness,
    generic_quantum_matrices,
    quantized_weyl,
    quantized_weyl_sandwich,
    quantum_affine,
    quantum_affine_sandwich,
    quantum_matrices,
    standard_quantum_affine_chi,
)
from .cluster import GradingMap, SandwichDescriptor
from .errors import SchemaError
from .scalargroup import ScalarContext, ScalarElement
from .schubert import CartanData, cartan_type

FORMAT_VERSION = 1
PAYLOADS = ("sandwich", "cgl", "weyl", "quantum_matrices", "quantum_affine", "schubert")
_TOP_KEYS = {"version", "label", "params", "relations", "cocycles", *PAYLOADS, "chi", "phi"}


@dataclass
class Descriptor:
    """A parsed descriptor file; ``sandwich`` and/or ``cgl`` are filled per payload."""

    kind: str
    ctx: ScalarContext
    label: str
    sandwich: SandwichDescriptor | None = None
    cgl: CglDescriptor | None = None
    cartan: CartanData | None = None
    word: tuple[int, ...] | None = None
    cocycles: list[CocycleClass] = field(default_factory=list)
    source: str = ""
    family: dict[str, Any] = field(default_factory=dict)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def parse_scalar(ctx: ScalarContext, value: Any, where: str = "scalar") -> ScalarElement:
    if isinstance(value, str):
        return ctx.parse(value)
    if isinstance(value, (int,)) and not isinstance(value, bool) and value == 1:
        return ctx.one()
    if isinstance(value, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        _require(len(value) == ctx.m, f"{where}: exponent list {value} has length {len(value)}, expected {ctx.m}")
        return ctx.element(value)
    raise SchemaError(f"{where}: cannot read scalar {value!r}")


def parse_upper(ctx: ScalarContext, n: int, rows: Any, where: str) -> Bicharacter:
    _require(isinstance(rows, list), f"{where}: expected a list of upper-triangular rows")
    _require(len(rows) in (n, n - 1) or n == 0, f"{where}: expected {n} rows, got {len(rows)}")
    upper = {}
    for i, row in enumerate(rows):
        _require(isinstance(row, list), f"{where}: row {i + 1} is not a list")
        _require(len(row) == n - 1 - i, f"{where}: row {i + 1} must have {n - 1 - i} entries, got {len(row)}")
        for off, v in enumerate(row):
            upper[(i, i + 1 + off)] = parse_scalar(ctx, v, f"{where}[{i + 1}][{i + 2 + off}]")
    return Bicharacter.from_upper(ctx, n, upper)


def format_upper(b: Bicharacter) -> list[list[str]]:
    return [[b.ctx.format(b.entries[i][j]) for j in range(i + 1, b.n)] for i in range(b.n)]


def parse_matrix(rows: Any, where: str, ncols: int | None = None) -> GradingMap:
    _require(isinstance(rows, list) and all(isinstance(r, list) for r in rows), f"{where}: expected a list of integer rows")
    for r in rows:
        _require(all(isinstance(x, int) and not isinstance(x, bool) for x in r), f"{where}: entries must be integers")
    widths = {len(r) for r in rows}
    _require(len(widths) <= 1, f"{where}: rows have different lengths")
    width = widths.pop() if widths else (ncols or 0)
    return GradingMap.from_rows(rows, width)


def _pair_key(text: str, n: int, where: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in str(text).split(","))
    except ValueError:
        raise SchemaError(f"{where}: key {text!r} is not of the form 'i,j'") from None
    _require(1 <= a < b <= n, f"{where}: key {text!r} must satisfy 1 <= i < j <= {n}")
    return a - 1, b - 1


def _params_pairs(ctx: ScalarContext, n: int, raw: Any, where: str) -> dict[tuple[int, int], ScalarElement]:
    raw = raw or {}
    _require(isinstance(raw, dict), f"{where}: expected an object keyed by 'i,j'")
    out = {(i, j): ctx.one() for i in range(n) for j in range(i + 1, n)}
    for key, val in raw.items():
        out[_pair_key(key, n, where)] = parse_scalar(ctx, val, f"{where}[{key}]")
    return out


def _count(value: Any, where: str, minimum: int = 1) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool) and value >= minimum, f"{where}: expected an integer >= {minimum}")
    return value


def _context(data: Mapping[str, Any]) -> ScalarContext:
    params = data.get("params", [])
    _require(isinstance(params, list) and all(isinstance(p, str) for p in params), "params: expected a list of names")
    rel = data.get("relations", [])
    _require(isinstance(rel, list), "relations: expected a list of exponent rows")
    for r in rel:
        _require(
            isinstance(r, list) and len(r) == len(params) and all(isinstance(x, int) and not isinstance(x, bool) for x in r),
            f"relations: row {r!r} must be {len(params)} integers",
        )
    return ScalarContext.with_relations(params, rel)


def _sandwich(ctx: ScalarContext, body: Mapping[str, Any], label: str) -> SandwichDescriptor:
    _require("chi" in body and "phi" in body, "sandwich: 'chi' and 'phi' are required")
    phi = parse_matrix(body["phi"], "phi")
    n = phi.source_rank
    chi = parse_upper(ctx, n, body["chi"], "chi")
    return SandwichDescriptor(ctx, chi, phi, label)


def _cgl(ctx: ScalarContext, body: Mapping[str, Any], label: str) -> CglDescriptor:
    for key in ("lambda", "eta"):
        _require(key in body, f"cgl: '{key}' is required")
    eta = body["eta"]
    _require(isinstance(eta, list) and all(isinstance(x, int) for x in eta), "cgl.eta: expected a list of integers")
    n = len(eta)
    lam = parse_upper(ctx, n, body["lambda"], "cgl.lambda")
    witnesses = {}
    raw_w = body.get("delta_witness", {})
    _require(isinstance(raw_w, dict), "cgl.delta_witness: expected an object keyed by variable index")
    for key, w in raw_w.items():
        try:
            k = int(key) - 1
        except ValueError:
            raise SchemaError(f"cgl.delta_witness: key {key!r} is not an index") from None
        _require(isinstance(w, dict) and "j" in w and "m" in w, f"cgl.delta_witness[{key}]: needs 'j' and 'm'")
        m = w["m"]
        _require(isinstance(m, list) and all(isinstance(x, int) for x in m), f"cgl.delta_witness[{key}].m: expected integers")
        witnesses[k] = Witness(int(w["j"]) - 1, tuple(m))
    raw_l = body.get("lambda_k", {})
    lambda_k = {}
    if isinstance(raw_l, list):
        _require(len(raw_l) == n, f"cgl.lambda_k: list must have {n} entries (null where delta vanishes)")
        for k, v in enumerate(raw_l):
            if v is not None:
                lambda_k[k] = parse_scalar(ctx, v, f"cgl.lambda_k[{k + 1}]")
    elif isinstance(raw_l, dict):
        for key, v in raw_l.items():
            lambda_k[int(key) - 1] = parse_scalar(ctx, v, f"cgl.lambda_k[{key}]")
    else:
        raise SchemaError("cgl.lambda_k: expected a list or an object")
    pi = parse_matrix(body["grading_pi"], "cgl.grading_pi") if body.get("grading_pi") is not None else None
    symmetric = body.get("symmetric", False)
    _require(isinstance(symmetric, bool), "cgl.symmetric: expected true or false")
    return CglDescriptor(ctx, lam, tuple(eta), witnesses, lambda_k, pi, symmetric, label)


def load_descriptor(data: Mapping[str, Any], source: str = "") -> Descriptor:
    """Validate and build a :class:`Descriptor` from parsed JSON."""
    _require(isinstance(data, dict), "descriptor must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    _require(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    version = data.get("version", FORMAT_VERSION)
    _require(version == FORMAT_VERSION, f"unsupported descriptor version {version!r}")
    ctx = _context(data)
    label = data.get("label", "")
    _require(isinstance(label, str), "label: expected a string")
    present = [k for k in PAYLOADS if k in data]
    flat = "chi" in data or "phi" in data
    _require(len(present) + int(flat) == 1, f"exactly one payload is required, found {present + (['chi/phi'] if flat else [])}")
    d = Descriptor(kind=present[0] if present else "sandwich", ctx=ctx, label=label, source=source)
    body = data[present[0]] if present else data
    _require(isinstance(body, dict), f"{d.kind}: payload must be an object")

    if d.kind == "sandwich":
        d.sandwich = _sandwich(ctx, body, label)
    elif d.kind == "cgl":
        d.cgl = _cgl(ctx, body, label)
    elif d.kind == "weyl":
        n = _count(body.get("n"), "weyl.n")
        qs_raw = body.get("q")
        _require(isinstance(qs_raw, list) and len(qs_raw) == n, f"weyl.q: expected a list of {n} scalars")
        qs = [parse_scalar(ctx, v, f"weyl.q[{i + 1}]") for i, v in enumerate(qs_raw)]
        p = _params_pairs(ctx, n, body.get("p"), "weyl.p")
        d.cgl = quantized_weyl(n, qs, p, label=label)
        d.sandwich = quantized_weyl_sandwich(n, qs, p, label=label)
        d.family = {"n": n, "q": qs, "p": p}
    elif d.kind == "quantum_matrices":
        n = _count(body.get("n"), "quantum_matrices.n", 2)
        if body.get("standard"):
            q = parse_scalar(ctx, body.get("q", "q"), "quantum_matrices.q")
            p = {(i, j): q.inverse() for i in range(n) for j in range(i + 1, n)}
            d.cgl = quantum_matrices(n, q ** -2, p, label=label or f"O_q(M_{n})")
            d.family = {"n": n, "lambda": q ** -2, "p": p}
        else:
            _require("lambda" in body, "quantum_matrices.lambda is required unless standard is true")
            lam = parse_scalar(ctx, body["lambda"], "quantum_matrices.lambda")
            p = _params_pairs(ctx, n, body.get("p"), "quantum_matrices.p")
            d.cgl = quantum_matrices(n, lam, p, label=label)
            d.family = {"n": n, "lambda": lam, "p": p}
    elif d.kind == "quantum_affine":
        n = _count(body.get("n"), "quantum_affine.n")
        if "chi" in body:
            chi = parse_upper(ctx, n, body["chi"], "quantum_affine.chi")
        else:
            q = parse_scalar(ctx, body.get("q", "q"), "quantum_affine.q")
            chi = Bicharacter.from_function(ctx, n, lambda i, j: q)
        phi = parse_matrix(body["phi"], "quantum_affine.phi") if "phi" in body else None
        d.sandwich = quantum_affine_sandwich(chi, phi, label=label)
        d.cgl = quantum_affine(chi, label=label)
    elif d.kind == "schubert":
        if "type" in body:
            _require(isinstance(body["type"], str), "schubert.type: expected a string such as 'B2'")
            d.cartan = cartan_type(body["type"])
        else:
            _require("gcm" in body, "schubert: 'type' or 'gcm' is required")
            d.cartan = CartanData(tuple(tuple(r) for r in body["gcm"]), "gcm")
        word = body.get("word", [])
        _require(isinstance(word, list) and all(isinstance(x, int) and x >= 1 for x in word), "schubert.word: expected 1-based letters")
        d.word = tuple(x - 1 for x in word)
    d.cocycles = [parse_cocycle(ctx, c, f"cocycles[{i + 1}]") for i, c in enumerate(data.get("cocycles", []))]
    return d


def parse_cocycle(ctx: ScalarContext, body: Any, where: str = "cocycle") -> CocycleClass:
    _require(isinstance(body, dict) and "sharp" in body, f"{where}: expected an object with 'sharp'")
    rows = body["sharp"]
    _require(isinstance(rows, list), f"{where}.sharp: expected upper-triangular rows")
    # the last row of an upper-triangular table is empty and may be omitted
    r = body.get("rank", len(rows[0]) + 1 if rows else 1)
    return CocycleClass(parse_upper(ctx, r, rows, f"{where}.sharp"))


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_file(path: str | Path) -> Descriptor:
    return load_descriptor(read_json(path), str(path))


def load_cocycle_file(path: str | Path, ctx: ScalarContext) -> list[CocycleClass]:
    """A cocycle file holds one ``{"sharp": ...}`` object or a list of them.

    An optional ``params`` list must match the descriptor's parameters.
    """
    data = read_json(path)
    if isinstance(data, dict) and "params" in data:
        _require(tuple(data["params"]) == ctx.params, f"{path}: parameters {data['params']} differ from {list(ctx.params)}")
    items = data if isinstance(data, list) else data.get("cocycles", [data]) if isinstance(data, dict) else None
    _require(isinstance(items, list), f"{path}: expected a cocycle object or list")
    return [parse_cocycle(ctx, c, f"{path}[{i + 1}]") for i, c in enumerate(items)]


def builtin_json(kind: str, n: int) -> dict:
    """Generic-parameter descriptor JSON for a built-in family."""
    if kind == "quantum_matrices":
        d = generic_quantum_matrices(n)
        return {
            "version": FORMAT_VERSION,
            "label": d.label,
            "params": list(d.ctx.params),
            "quantum_matrices": {
                "n": n,
                "lambda": "lambda",
                "p": {f"{i + 1},{j + 1}": f"p{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)},
            },
        }
    if kind == "quantized_weyl":
        params = [f"q{j + 1}" for j in range(n)] + [f"p{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
        return {
            "version": FORMAT_VERSION,
            "label": f"A_{n}^Q,P",
            "params": params,
            "weyl": {
                "n": n,
                "q": [f"q{j + 1}" for j in range(n)],
                "p": {f"{i + 1},{j + 1}": f"p{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)},
            },
        }
    if kind == "quantum_affine":
        chi = standard_quantum_affine_chi(n)
        return {
            "version": FORMAT_VERSION,
            "label": f"O_q(K^{n})",
            "params": list(chi.ctx.params),
            "quantum_affine": {"n": n, "chi": format_upper(chi)},
        }
    raise SchemaError(f"unknown built-in kind {kind!r}")
