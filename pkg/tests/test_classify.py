import random
from fractions import Fraction as F

import pytest

from hexalink.algebra import Line
from hexalink.classify import (
    CUBIC_TYPE,
    LINE_SYMMETRIC,
    PARALLEL_PROPERTY,
    UNDETERMINED,
    ClassificationError,
    LinearRelation,
    _parallel_after_motion,
    classify,
    find_linear_relations,
    recover_cubic_parametrization,
    recover_symmetry_line,
)
from hexalink.generate import (
    construct_cubic_type,
    construct_line_symmetric,
    random_cubic_type,
    random_line,
    random_line_symmetric,
    random_parallel,
)
from hexalink.lambda_matrix import build_lambda_matrix
from hexalink.linkage import Linkage

I = Line.from_plucker((1, 0, 0), (0, 0, 0))
PAIRS = [(F(0), F(1)), (F(1), F(2)), (F(-1), F(3))]


@pytest.fixture
def cubic():
    rng = random.Random(21)
    return construct_cubic_type(PAIRS, [random_line(rng) for _ in range(3)])


def test_classify_example(ex1):
    res = classify(ex1)
    assert res.rank == 3 and res.family == PARALLEL_PROPERTY
    assert res.pairing.pairs == ((1, 4), (2, 3), (5, 6))
    doc = res.to_json()
    assert doc["rank"] == 3 and doc["family"] == "ParallelProperty"
    assert doc["data"]["pairs"] == [[1, 4], [2, 3], [5, 6]]


def test_classify_line_symmetric_roundtrip():
    for seed in range(5):
        L, l = random_line_symmetric(seed)
        res = classify(L)
        assert res.family == LINE_SYMMETRIC and res.rank == 2
        assert res.axis.same_axis(l)


def test_classify_cubic_roundtrip(cubic):
    res = classify(cubic)
    assert res.family == CUBIC_TYPE and res.rank == 4
    assert res.pairs == tuple(PAIRS)


def test_recover_symmetry_line_hand_example():
    h1 = Line.from_plucker((F(4, 5), F(3, 5), 0), (0, 0, 0))
    rng = random.Random(3)
    L = construct_line_symmetric(I, h1, random_line(rng), random_line(rng))
    g1 = L[0] + L[3]
    assert g1 == I * F(8, 5)
    assert recover_symmetry_line(L).same_axis(I)


def test_recover_symmetry_line_via_second_g():
    # h1 meets l = i at a right angle, so g1 = h1 + h4 = 0
    h1 = Line.from_plucker((0, 1, 0), (0, 0, 0))
    rng = random.Random(4)
    L = construct_line_symmetric(I, h1, random_line(rng), random_line(rng))
    assert all(x == 0 for x in (L[0] + L[3]).primal_vector)
    l = recover_symmetry_line(L)
    assert l.same_axis(I)
    for i in range(3):
        assert l * L[i] * l.inverse() == L[i + 3]


def test_recover_symmetry_line_fails_on_example(ex1):
    with pytest.raises(ClassificationError):
        recover_symmetry_line(ex1)


def test_recover_symmetry_line_irrational_norm():
    # l with a non-square |g|^2 still verifies; the axis comes back in floats
    L, l = random_line_symmetric(17)
    axis = recover_symmetry_line(L)
    assert axis.same_axis(l, tol=1e-9) if not axis.exact else axis.same_axis(l)


def test_linear_relations(cubic):
    rels = find_linear_relations(build_lambda_matrix(cubic))
    by_pair = {r.vars: r for r in rels}
    r12 = by_pair[(1, 2)].normalized()
    assert (r12.b, r12.c, r12.d) == (1, -2, -1)
    # each relation holds along sampled curve points
    for t in (F(-2), F(-1), F(1, 2), F(3), F(5)):
        ts = [(t - a) / b for a, b in PAIRS]
        for r in rels:
            a, b = r.vars
            assert r.b * ts[a - 1] + r.c * ts[b - 1] + r.d == 0


def test_linear_relation_needs_nonzero():
    with pytest.raises(ValueError):
        LinearRelation(F(0), F(1), F(1), (1, 2))


def test_linear_relations_rank_gate(ex1):
    with pytest.raises(ClassificationError):
        find_linear_relations(build_lambda_matrix(ex1))


def test_cubic_parametrization_gauge(cubic):
    assert recover_cubic_parametrization(cubic) == tuple(PAIRS)
    other = recover_cubic_parametrization(cubic, gauge=(F(2), F(-3)))
    # same curve: t -> 2 - 3t maps one gauge to the other
    for (a, b), (a2, b2) in zip(PAIRS, other):
        assert b2 == -3 * b and a2 == 2 - 3 * a


def test_cubic_parametrization_rank_gate():
    L, _ = random_line_symmetric(2)
    with pytest.raises(ClassificationError):
        recover_cubic_parametrization(L)


def test_cyclic_relabeling():
    L = random_parallel(6)
    base = classify(L)
    for k in range(1, 6):
        res = classify(L.cyclic_shift(k))
        assert res.family == base.family and res.rank == base.rank
        # the pattern is invariant under a shift by 3, so the first match is (-k) mod 3
        assert res.pairing.shift == (-k) % 3
        moved = {tuple(sorted(((a - 1 - k) % 6 + 1, (b - 1 - k) % 6 + 1))) for a, b in base.pairing.pairs}
        assert set(res.pairing.pairs) == moved
    L, l = random_line_symmetric(6)
    res = classify(L.cyclic_shift(2))
    assert res.family == LINE_SYMMETRIC
    cub, _ = random_cubic_type(6)
    assert classify(cub.cyclic_shift(2)).family == CUBIC_TYPE


def test_undetermined_generic():
    rng = random.Random(9)
    L = Linkage([random_line(rng) for _ in range(6)])
    res = classify(L)
    assert res.family == UNDETERMINED and res.rank not in (2, 3, 4)
    assert "reason" in res.to_json()["data"]


def test_float_input_is_advisory(ex1):
    res = classify(ex1.as_float())
    assert res.family == PARALLEL_PROPERTY
    assert res.notes


def test_parallel_after_motion(ex1):
    p = _parallel_after_motion(ex1, seed=3)
    assert p is not None and p.pairs == ((1, 4), (2, 3), (5, 6))
