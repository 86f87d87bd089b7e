import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from twistinv import cgl as C
from twistinv.bicharacter import Bicharacter
from twistinv.cluster import GradingMap, ad_invariant, tw_invariant
from twistinv.errors import CrossCheckError, PreconditionError, SchemaError
from twistinv.ore import check_lambda_against_presentation, quantum_matrices_presentation
from twistinv.scalargroup import ScalarContext, is_subgroup


class TestPredecessor:
    def test_alternating_levels(self):
        assert C.predecessor([1, 2, 1, 2]) == ([None, None, 0, 1], [0, 0, 1, 1])

    def test_injective(self):
        assert C.predecessor([5, 2, 7]) == ([None, None, None], [0, 0, 0])

    def test_constant(self):
        assert C.predecessor([1, 1, 1])[0] == [None, 0, 1]

    @given(st.lists(st.integers(0, 3), min_size=1, max_size=8))
    def test_matches_definition(self, eta):
        p, o = C.predecessor(eta)
        for k in range(len(eta)):
            earlier = [j for j in range(k) if eta[j] == eta[k]]
            assert p[k] == (max(earlier) if earlier else None)
            assert o[k] == len(earlier)


class TestQuantumMatrices2:
    d = C.generic_quantum_matrices(2)

    def test_hmax_grading(self):
        assert C.degree_map_hmax(self.d).matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 1]]
        assert self.d.vanishing == [0, 1, 2] and self.d.nonvanishing == [3]

    def test_kernel_vector(self):
        assert C.kernel_vectors(self.d, C.degree_map_hmax(self.d)) == {3: (1, -1, -1, 1)}

    def test_cluster_matrix_by_double_product(self):
        q, beta = C.cluster_matrix(self.d)
        assert beta.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]
        assert q == C.cluster_matrix_direct(self.d)
        # the quantum determinant level commutes with X11 and q-commutes with X12, X21
        assert [str(q.value(3, j)) for j in range(4)] == ["1", "lambda*p12^-2", "lambda^-1*p12^2", "1"]

    def test_lambda_matches_straightening(self):
        ctx = self.d.ctx
        pres = quantum_matrices_presentation(2, ctx.param("lambda"), {(0, 1): ctx.param("p12")})
        assert check_lambda_against_presentation(pres, self.d.lam) == []


@pytest.mark.parametrize("n", [2, 3])
def test_quantum_matrices_invariants(n):
    d = C.generic_quantum_matrices(n)
    ps = ", ".join(f"p{i}{j}" for i in range(1, n + 1) for j in range(i + 1, n + 1))
    assert C.ad_cgl(d).describe() == f"<lambda, {ps}>"
    assert C.tw_cgl(d).describe() == "<lambda>"
    assert C.tw_general(d) == C.tw_symmetric(d) == C.tw_kernel_image(d)
    assert tw_invariant(C.to_sandwich(d)) == C.tw_cgl(d)
    assert ad_invariant(C.to_sandwich(d)) == C.ad_cgl(d)


def test_quantum_matrices_3_lambda_matches_straightening():
    d = C.generic_quantum_matrices(3)
    ctx = d.ctx
    p = {(i, j): ctx.param(f"p{i + 1}{j + 1}") for i in range(3) for j in range(i + 1, 3)}
    assert check_lambda_against_presentation(quantum_matrices_presentation(3, ctx.param("lambda"), p), d.lam) == []


def test_standard_quantum_matrices():
    d2 = C.standard_quantum_matrices(2)
    assert C.ad_cgl(d2).describe() == "<q>"
    assert C.tw_cgl(d2).describe() == "<q^2>"
    assert C.ad_cgl(C.standard_quantum_matrices(3)).describe() == "<q>"
    assert C.tw_cgl(C.standard_quantum_matrices(3)).describe() == "<q^2>"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_two_routes(n):
    d = C.generic_quantized_weyl(n)
    expect = "<" + ", ".join(f"q{j}" for j in range(1, n + 1)) + ">"
    assert C.tw_cgl(d).describe() == expect
    qs = [d.ctx.param(f"q{j + 1}") for j in range(n)]
    p = {(i, j): d.ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
    assert tw_invariant(C.quantized_weyl_sandwich(n, qs, p)).describe() == expect
    assert tw_invariant(C.to_sandwich(d)).describe() == expect


def test_weyl_one_grading_and_kernel():
    d = C.generic_quantized_weyl(1)
    pi = C.degree_map_hmax(d)
    assert pi.matrix.tolist() == [[1], [-1]]
    assert C.kernel_vectors(d, pi) == {1: (1, 1)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_witness_independence(n):
    a = C.generic_quantized_weyl(n)
    b = C.generic_quantized_weyl(n, constant_witness=True)
    assert C.tw_general(a) == C.tw_general(b) == C.tw_kernel_image(b)


def test_constant_witness_breaks_symmetric_identities():
    d = C.generic_quantized_weyl(2, constant_witness=True)
    assert not d.symmetric
    forced = C.CglDescriptor(d.ctx, d.lam, d.eta, d.delta_witness, d.lambda_k, symmetric=True)
    assert not C.validate_symmetric(forced, raise_on_failure=False).ok
    with pytest.raises(CrossCheckError):
        C.validate_symmetric(forced)


def test_all_delta_zero():
    chi = C.standard_quantum_affine_chi(3)
    d = C.quantum_affine(chi)
    assert C.degree_map_hmax(d).matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert C.kernel_vectors(d, C.degree_map_hmax(d)) == {}
    assert C.tw_cgl(d).is_trivial()
    q, _ = C.cluster_matrix(d)
    assert q == d.lam
    triv = C.quantum_affine(Bicharacter.trivial(chi.ctx, 3))
    assert C.ad_cgl(triv).is_trivial()


def test_p_eliminating_twist():
    for n in (2, 3):
        d = C.generic_quantum_matrices(n)
        p = {(i, j): d.ctx.param(f"p{i + 1}{j + 1}") for i in range(n) for j in range(i + 1, n)}
        t = C.twist_cgl(d, C.quantum_matrices_grading(n), C.p_eliminating_cocycle(n, p))
        one = {k: d.ctx.one() for k in p}
        assert t.lam == C.quantum_matrices(n, d.ctx.param("lambda"), one).lam
        assert C.ad_cgl(t).describe() == "<lambda>" == C.tw_cgl(t).describe()


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_specialized_quantum_matrices(seed):
    rnd = random.Random(seed)
    ctx = ScalarContext.free("a", "b")
    mono = lambda: ctx.element([rnd.randint(-3, 3), rnd.randint(-3, 3)])  # noqa: E731
    lam = mono()
    while lam.is_one():
        lam = mono()
    n = rnd.choice([2, 3])
    p = {(i, j): mono() for i in range(n) for j in range(i + 1, n)}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        d = C.quantum_matrices(n, lam, p)
    tw = C.tw_cgl(d)
    assert tw == C.tw_kernel_image(d) == tw_invariant(C.to_sandwich(d))
    assert is_subgroup(tw, C.ad_cgl(d))


def test_supplied_grading_must_have_independent_vanishing_degrees():
    d = C.generic_quantum_matrices(2)
    bad = C.CglDescriptor(d.ctx, d.lam, d.eta, d.delta_witness, d.lambda_k, grading_pi=GradingMap.from_rows([[1], [1], [0], [0]], 1))
    with pytest.raises((PreconditionError, CrossCheckError)):
        C.tw_cgl(bad)


def test_schema_errors():
    d = C.generic_quantum_matrices(2)
    with pytest.raises(SchemaError):
        C.CglDescriptor(d.ctx, d.lam, (0, 1), d.delta_witness, d.lambda_k)
    with pytest.raises(SchemaError):
        C.CglDescriptor(d.ctx, d.lam, d.eta, {3: C.Witness(3, (0, 0, 0))}, d.lambda_k)
    with pytest.raises(SchemaError):
        C.CglDescriptor(d.ctx, d.lam, d.eta, d.delta_witness, {})


def test_root_of_unity_lambda_warns():
    ctx = ScalarContext.with_relations(["q"], [[4]])
    with pytest.warns(RuntimeWarning, match="root of unity"):
        C.standard_quantum_matrices(2, ctx)


def test_builtin_descriptor():
    assert C.tw_cgl(C.builtin_descriptor("quantum_matrices", 2)).describe() == "<lambda>"
    with pytest.raises(SchemaError):
        C.builtin_descriptor("nope", 2)
