import pytest
from hypothesis import given, settings, strategies as st

from twistinv.errors import PreconditionError
from twistinv.scalargroup import (
    INFINITE,
    ScalarContext,
    adjoin_square_roots,
    cardinality,
    generated_subgroup,
    intersection,
    is_cyclic,
    is_member,
    is_subgroup,
    subgroup_product,
    trivial_subgroup,
)

FREE_Q = ScalarContext.free("q")
Q6 = ScalarContext.with_relations(["q"], [[6]])


def q_(ctx, k):
    return ctx.param("q") ** k


def test_empty_generators_give_relation_lattice():
    g = generated_subgroup(Q6, [])
    assert g == trivial_subgroup(Q6)
    assert g.lattice.basis == ((6,),)
    assert g.describe() == "<1>"


def test_index_two():
    g = generated_subgroup(FREE_Q, [q_(FREE_Q, 2)])
    assert g.lattice.basis == ((2,),)
    assert not is_member(g, q_(FREE_Q, 1))
    assert is_member(g, q_(FREE_Q, 4))


def test_order_three_under_q6():
    g = generated_subgroup(Q6, [q_(Q6, 2)])
    # enumerate the exponents reachable mod 6
    reached = {(2 * k) % 6 for k in range(12)}
    assert cardinality(g) == len(reached) == 3


def test_membership_of_mixed_element():
    ctx = ScalarContext.free("lambda", "p12")
    g = generated_subgroup(ctx, [ctx.param("lambda"), ctx.param("p12")])
    assert is_member(g, ctx.param("lambda") / ctx.param("p12"))


def test_cyclicity_examples():
    ctx = ScalarContext.free("q", "p")
    assert is_cyclic(generated_subgroup(ctx, [ctx.param("q")]))
    two = ScalarContext.free("q1", "q2")
    assert not is_cyclic(generated_subgroup(two, [two.param("q1"), two.param("q2")]))
    g = generated_subgroup(FREE_Q, [q_(FREE_Q, 2), q_(FREE_Q, 3)])
    assert is_cyclic(g) and g == generated_subgroup(FREE_Q, [q_(FREE_Q, 1)])


def test_cardinality_examples():
    assert cardinality(generated_subgroup(FREE_Q, [q_(FREE_Q, 1)])) == INFINITE
    assert cardinality(generated_subgroup(Q6, [q_(Q6, 1)])) == 6
    assert cardinality(generated_subgroup(Q6, [q_(Q6, 2)])) == 3


def test_element_equality_modulo_relations():
    assert q_(Q6, 7) == q_(Q6, 1)
    assert q_(Q6, 6).is_one()
    assert q_(FREE_Q, 6) != FREE_Q.one()


def test_context_mismatch():
    other = ScalarContext.free("t")
    with pytest.raises(PreconditionError):
        generated_subgroup(FREE_Q, [other.param("t")])


def test_square_roots():
    refined, emb = adjoin_square_roots(FREE_Q)
    q2 = emb(FREE_Q.param("q"))
    assert q2.exponents == (2,)
    half = refined.element([1])
    assert half * half == q2
    assert emb.subgroup(generated_subgroup(FREE_Q, [FREE_Q.param("q")])).lattice.basis == ((2,),)
    again, emb2 = adjoin_square_roots(refined)
    assert emb.then(emb2)(FREE_Q.param("q")).exponents == (4,)


def test_parse_and_format_round_trip():
    ctx = ScalarContext.free("lambda", "p12")
    for text in ("1", "lambda", "lambda^-2*p12", "p12^3"):
        assert str(ctx.parse(text)) == text


rel_ctx = st.sampled_from([FREE_Q, Q6, ScalarContext.with_relations(["q"], [[4]])])
exps = st.lists(st.integers(-6, 6), min_size=0, max_size=4)


@given(rel_ctx, exps, st.permutations(range(4)))
@settings(max_examples=100, deadline=None)
def test_generator_order_and_inversion_free(ctx, es, perm):
    gens = [ctx.element([e]) for e in es]
    g = generated_subgroup(ctx, gens)
    shuffled = [gens[i] for i in perm if i < len(gens)]
    assert generated_subgroup(ctx, shuffled) == g
    assert generated_subgroup(ctx, [x.inverse() for x in gens]) == g
    for x in gens:
        assert is_cyclic(generated_subgroup(ctx, [x]))
        assert is_member(g, x)


@given(exps, exps)
@settings(max_examples=100, deadline=None)
def test_equality_agrees_with_mutual_membership(a, b):
    ctx = ScalarContext.free("q")
    ga = generated_subgroup(ctx, [ctx.element([e]) for e in a])
    gb = generated_subgroup(ctx, [ctx.element([e]) for e in b])
    mutual = all(is_member(gb, ctx.element([e])) for e in a) and all(is_member(ga, ctx.element([e])) for e in b)
    assert (ga == gb) == mutual
    inter = intersection(ga, gb)
    assert is_subgroup(inter, ga) and is_subgroup(inter, gb)


@given(st.sampled_from([2, 3, 4, 6]), st.sampled_from([2, 3, 5]), st.integers(1, 6), st.integers(1, 6))
@settings(max_examples=50, deadline=None)
def test_cardinality_multiplicative(l1, l2, k1, k2):
    a = ScalarContext.with_relations(["a"], [[l1]])
    b = ScalarContext.with_relations(["b"], [[l2]])
    ga = generated_subgroup(a, [a.param("a") ** k1])
    gb = generated_subgroup(b, [b.param("b") ** k2])
    assert cardinality(subgroup_product(ga, gb)) == cardinality(ga) * cardinality(gb)
