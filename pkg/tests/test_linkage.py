import json
import random
from fractions import Fraction as F

import pytest

from hexalink.algebra import DualNumber, DualQuaternion, Line
from hexalink.classify import LINE_SYMMETRIC, classify
from hexalink.generate import random_line, random_line_symmetric, random_parallel
from hexalink.io import (
    FormatError,
    configs_from_json,
    configs_to_json,
    dumps_linkage,
    linkage_from_json,
    loads_linkage,
)
from hexalink.lambda_matrix import build_lambda_matrix, lambda_rank
from hexalink.linkage import (
    INF,
    ClosureError,
    ConfigParam,
    Configuration,
    Linkage,
    LinkageError,
    SymConfiguration,
    closure_product,
    closure_residual,
    lambda_sign,
    link_parameters,
    parallel_pairing,
    transform_by_configuration,
)
from hexalink.sampler import trace_configuration_curve

from .conftest import oracle_add, oracle_mul, oracle_prod


def _curve_point(t):
    return (F(5, 4) * t, t, t, F(5, 4) * t, t, t)


def _oracle_closure(L, ts):
    factors = []
    for t, h in zip(ts, L):
        factors.append(oracle_add(DualQuaternion.scalar(t), -h))
    return oracle_prod(*factors)


def test_config_param_projective():
    assert ConfigParam(F(3), F(2)) == ConfigParam(F(3, 2), F(1))
    assert ConfigParam(F(-5), F(0)) == INF
    assert ConfigParam.of("inf").is_infinite
    assert ConfigParam.of("2/3").value == F(2, 3)
    with pytest.raises(ValueError):
        ConfigParam(F(0), F(0))


def test_closure_all_infinity(ex1):
    assert closure_residual(ex1, Configuration.infinity()) == (1, 0)
    L = random_parallel(3)
    assert closure_residual(L, [INF] * 6) == (1, 0)


def test_closure_on_example_curve(ex1):
    tau = _curve_point(F(1))
    sign, res = closure_residual(ex1, tau)
    assert res == 0 and sign == 1
    p = _oracle_closure(ex1, tau)
    assert p[0] != 0 and all(x == 0 for x in p[1:])
    assert closure_product(ex1, tau).c == p


def test_closure_off_curve(ex1):
    tau = (1,) * 6
    p = _oracle_closure(ex1, tau)
    expected = max(abs(x) for x in p[1:]) / max(abs(x) for x in p)
    sign, res = closure_residual(ex1, tau)
    assert res == expected and res > 0 and sign is None


def test_lambda_sign_matches_scalar_part(ex1):
    # along the curve the closure product is a real number; its sign is lambda
    for t in (F(-2), F(1, 2), F(3)):
        tau = _curve_point(t)
        p = closure_product(ex1, tau)
        assert lambda_sign(ex1, tau) == (1 if p.c[0] > 0 else -1)


def test_linkage_invariants():
    i = Line.from_plucker((1, 0, 0), (0, 0, 0))
    j = Line.from_plucker((0, 1, 0), (0, 0, 0))
    k = Line.from_plucker((0, 0, 1), (0, 0, 0))
    with pytest.raises(LinkageError):
        Linkage([i, i, j, k, j, k])
    with pytest.raises(LinkageError):
        Linkage([i, j, k, i, j, k])
    # opposite orientation of the same axis is allowed for h_i, h_{i+3}
    Linkage([i, j, k, i.reversed(), j.reversed(), k.reversed()])
    with pytest.raises(LinkageError):
        Linkage([i, j, k, j, i])


def test_transform_identity_at_infinity(ex1):
    assert transform_by_configuration(ex1, Configuration.infinity()) == ex1


def test_transform_on_example_curve(ex1):
    tau = _curve_point(F(1))
    moved = transform_by_configuration(ex1, tau)
    assert moved.exact
    assert moved[0] == ex1[0] and moved[5] == ex1[5]
    assert link_parameters(moved) == link_parameters(ex1)
    assert closure_residual(moved, Configuration.infinity()) == (1, 0)
    assert moved != ex1
    # oracle: h'_3 = (r1 r2) h3 (r1 r2)^-1, checked as h'_3 (r1 r2) == (r1 r2) h3
    r = oracle_mul(oracle_add(DualQuaternion.scalar(tau[0]), -ex1[0]),
                   oracle_add(DualQuaternion.scalar(tau[1]), -ex1[1]))
    assert oracle_mul(moved[2], r) == oracle_mul(r, ex1[2])


def test_transform_refuses_non_closing(ex1):
    with pytest.raises(ClosureError):
        transform_by_configuration(ex1, (1,) * 6)


def test_transform_keeps_parallel_pairing_and_rank(ex1):
    for t in (F(-2), F(1, 2), F(3)):
        moved = transform_by_configuration(ex1, _curve_point(t))
        p = parallel_pairing(moved)
        assert p is not None and p.pairs == ((1, 4), (2, 3), (5, 6))
        assert lambda_rank(build_lambda_matrix(moved)) == 3


def test_transform_keeps_line_symmetry():
    L, _ = random_line_symmetric(11)
    grid = [F(k, 2) for k in range(-4, 5)]
    pts = trace_configuration_curve(L, grid)
    finite = [p for p in pts if not any(t.is_infinite for t in p.t)]
    assert finite
    for cfg in finite[:3]:
        moved = transform_by_configuration(L.as_float(), cfg)
        before, after = link_parameters(L.as_float()), link_parameters(moved)
        for a, b in zip(before, after):
            assert abs(a.re - b.re) < 1e-8 and abs(a.du - b.du) < 1e-8
        assert classify(moved).family == LINE_SYMMETRIC


def test_parallel_pairing_example(ex1):
    p = parallel_pairing(ex1)
    assert p.shift == 0
    assert p.pairs == ((1, 4), (2, 3), (5, 6))


def test_parallel_pairing_random_is_none():
    rng = random.Random(5)
    L = Linkage([random_line(rng) for _ in range(6)])
    assert parallel_pairing(L) is None


def test_parallel_pairing_shift_one():
    L = random_parallel(8)
    # joint 6 first: now h2||h5, h3||h4, h6||h1
    shifted = L.cyclic_shift(5)
    p = parallel_pairing(shifted)
    assert p.shift == 1
    assert set(p.pairs) == {(2, 5), (3, 4), (1, 6)}


def test_link_parameters():
    i = Line.from_plucker((1, 0, 0), (0, 0, 0))
    j = Line.from_plucker((0, 1, 0), (0, 0, 0))
    k = Line.from_plucker((0, 0, 1), (0, 0, 0))
    L = Linkage([i, j, k, i.reversed(), j.reversed(), k.reversed()])
    assert link_parameters(L)[0] == DualNumber(0, 0)


def test_link_parameters_example(ex1):
    h1, h2, h3 = ex1[0], ex1[1], ex1[2]
    sym = oracle_add(oracle_mul(h1, h2), oracle_mul(h2, h1))
    lp = link_parameters(ex1)
    assert lp[0] == DualNumber(-sym[0] / 2, -sym[4] / 2)
    assert abs(lp[1].re) == 1


def test_cyclic_shift():
    L = random_parallel(1)
    assert L.cyclic_shift(2)[0] == L[2]
    assert L.cyclic_shift(6) == L


def test_json_roundtrip_exact(ex1):
    text = dumps_linkage(ex1)
    back = loads_linkage(text)
    assert back == ex1 and back.exact
    doc = json.loads(text)
    assert doc["scalar"] == "rational"
    assert doc["joints"][0]["dual"][0] == "-7/11"


def test_json_float_and_override(ex1, monkeypatch):
    doc = json.loads(dumps_linkage(ex1))
    monkeypatch.setenv("HEXALINK_SCALAR", "float")
    L = linkage_from_json(doc)
    assert not L.exact
    assert abs(float(L[0].moment[0]) + 7 / 11) < 1e-15


def test_json_errors():
    with pytest.raises(FormatError):
        loads_linkage("{")
    with pytest.raises(FormatError):
        loads_linkage('{"scalar": "rational", "joints": []}')


def test_configs_json_roundtrip():
    cfgs = [SymConfiguration([F(5, 4), 1, INF]), SymConfiguration([0.5, -2.0, 3.0], exact=False)]
    doc = configs_to_json(cfgs)
    back = configs_from_json(json.loads(json.dumps(doc)))
    assert back[0].t[2].is_infinite
    assert float(back[1].t[0].num) == 0.5
