import json

import pytest

from twistinv import cgl as C
from twistinv.bicharacter import Bicharacter
from twistinv.descriptors import (
    builtin_json,
    format_upper,
    load_cocycle_file,
    load_descriptor,
    parse_cocycle,
    parse_upper,
)
from twistinv.errors import SchemaError
from twistinv.scalargroup import ScalarContext


@pytest.mark.parametrize("kind,n", [(k, n) for k in C.BUILTIN_KINDS for n in (1, 2, 3) if not (k == "quantum_matrices" and n == 1)])
def test_builtin_json_survives_serialization(kind, n):
    data = builtin_json(kind, n)
    again = load_descriptor(json.loads(json.dumps(data)))
    direct = C.builtin_descriptor(kind, n)
    assert again.cgl.lam == direct.lam
    assert C.tw_cgl(again.cgl) == C.tw_cgl(direct)


def test_upper_rows_round_trip():
    ctx = ScalarContext.free("a", "b")
    chi = Bicharacter.from_upper(ctx, 3, {(0, 1): ctx.parse("a^2*b"), (0, 2): ctx.parse("b^-1"), (1, 2): ctx.parse("1")})
    rows = format_upper(chi)
    assert rows == [["a^2*b", "b^-1"], ["1"], []]
    assert parse_upper(ctx, 3, rows, "chi") == chi
    assert parse_upper(ctx, 3, rows[:2], "chi") == chi


def test_indices_are_one_based():
    d = load_descriptor({"params": ["q1", "p"], "weyl": {"n": 2, "q": ["q1", "q1"], "p": {"1,2": "p"}}})
    assert C.tw_cgl(d.cgl).describe() == "<q1>"
    with pytest.raises(SchemaError):
        load_descriptor({"params": ["q1", "p"], "weyl": {"n": 2, "q": ["q1", "q1"], "p": {"0,1": "p"}}})


def test_exponent_vectors_accepted_as_scalars():
    d = load_descriptor({"params": ["q"], "quantum_affine": {"n": 2, "chi": [[[3]], []]}})
    assert C.ad_cgl(d.cgl).describe() == "<q^3>"


def test_standard_quantum_matrices_payload():
    d = load_descriptor({"params": ["q"], "quantum_matrices": {"n": 2, "standard": True}})
    assert C.tw_cgl(d.cgl).describe() == "<q^2>"


def test_schubert_payload_by_gcm():
    d = load_descriptor({"schubert": {"gcm": [[2, -1], [-1, 2]], "word": [1, 2, 1]}})
    assert d.word == (0, 1, 0) and d.cartan.norms == (2, 2)
    with pytest.raises(SchemaError):
        load_descriptor({"schubert": {"type": "A2", "word": [0]}})


def test_cocycle_rank_inferred_from_rows():
    ctx = ScalarContext.free("t")
    assert parse_cocycle(ctx, {"sharp": [["t", "1"], ["t"]]}).rank == 3
    assert parse_cocycle(ctx, {"sharp": [["t"], []]}).rank == 2
    assert parse_cocycle(ctx, {"sharp": [], "rank": 1}).rank == 1


def test_cocycle_file_forms(tmp_path):
    ctx = ScalarContext.free("t")
    single = tmp_path / "one.json"
    single.write_text(json.dumps({"sharp": [["t"]]}))
    many = tmp_path / "many.json"
    many.write_text(json.dumps([{"sharp": [["t"]]}, {"sharp": [["t^2"]]}]))
    assert len(load_cocycle_file(single, ctx)) == 1
    assert len(load_cocycle_file(many, ctx)) == 2


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"params": ["q", "q"], "quantum_affine": {"n": 2}},
        {"params": ["q"], "relations": [[1, 2]], "quantum_affine": {"n": 2}},
        {"params": ["q"], "quantum_affine": {"n": 0}},
        {"params": ["q"], "quantum_affine": {"n": True}},
        {"params": ["q"], "sandwich": {"chi": [["q"], []]}},
        {"params": ["q"], "cgl": {"eta": [0, 0], "lambda": [["q"], []], "delta_witness": {"x": {}}}},
        {"params": ["q"], "quantum_matrices": {"n": 2}},
        {"label": 3, "params": [], "quantum_affine": {"n": 1}},
    ],
)
def test_schema_violations(data):
    with pytest.raises(SchemaError):
        load_descriptor(data)
