from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from toriccontract.applications import (FiberProductInstance, FixtureError, NestedInstance,
                                        fiber_product, fiber_product_order, flagship_example,
                                        load_flagship, nested_config, veronese, veronese_columns)
from toriccontract.contraction import ContractionProblem, contract_initial, contraction_elimination
from toriccontract.groebner import weight_from_order
from toriccontract.ring import TermOrder
from toriccontract.toric import SemigroupSpec, toric_ideal


def test_veronese_examples():
    v = veronese(2, 2)
    assert v.amap.matrix == ((2, 1, 0), (0, 1, 2))
    assert v.groebner.formatted() == ["x1*x3 - x2^2"]
    assert v.order.kind == "lex"
    assert veronese(1, 4).groebner.elements == ()
    v = veronese(3, 2)
    assert v.amap.cols == 6
    ii = v.groebner.initial_ideal()
    assert ii.delta == 2 and ii.is_squarefree
    assert veronese_columns(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]
    with pytest.raises(ValueError):
        veronese(0, 2)


def test_fiber_product_single_minor():
    res = fiber_product(FiberProductInstance((2,), (2,)))
    assert res.kernel.formatted() == ["x1_1_2*x1_2_1 - x1_1_1*x1_2_2"]
    res = fiber_product(FiberProductInstance((2,), (3,)))
    assert len(res.kernel) == 3


def test_fiber_product_order_convention():
    inst = FiberProductInstance((2,), (2,))
    _, _, R = inst.rings()
    o = fiber_product_order(inst)
    # x_{21} largest, then x_{22}, x_{11}, x_{12}
    assert [R.names[i] for i in o.priority] == ["x1_2_1", "x1_2_2", "x1_1_1", "x1_1_2"]


def test_fiber_product_closed_form_all_small():
    sizes = range(1, 4)
    for d in (1, 2):
        for s in itertools.product(sizes, repeat=d):
            for t in itertools.product(sizes, repeat=d):
                inst = FiberProductInstance(s, t)
                res = fiber_product(inst, verify=False)
                computed = toric_ideal(res.amap, res.order)
                assert computed.formatted() == res.kernel.formatted(), (s, t)


def test_fiber_product_with_ideals():
    inst = FiberProductInstance((2,), (2,), ("y1_1^2 - y1_2^2",), ("z1_1*z1_2",))
    res = fiber_product(inst)
    rep = contract_initial(res.problem, res.kernel)
    assert rep.delta <= 2
    assert rep.lifted_is_groebner
    oracle = contraction_elimination(res.amap, res.problem.ideal, rep.groebner.order)
    assert oracle.formatted() == rep.groebner.formatted()


def test_nested_small_example():
    A = [[1, 1, 0], [1, 0, 2], [1, 2, 1]]
    res = nested_config(NestedInstance(A, [[[1], [1]], [[1], [1]], [[1]]]))
    S = res.B.source
    names = {"*".join(f"{S.names[i]}^{e}" if e > 1 else S.names[i] for i, e in enumerate(c) if e)
             for c in res.A_tilde.columns()}
    assert names == {"y1*y3*y5", "y1*y4*y5", "y2*y3*y5", "y2*y4*y5", "y1*y5^2", "y2*y5^2",
                     "y3^2*y5", "y3*y4*y5", "y4^2*y5"}


def test_nested_identity_blocks():
    A = [[2, 1, 0], [0, 1, 2]]
    blocks = [[[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 1, 0], [0, 0, 0, 1]]]
    res = nested_config(NestedInstance(A, blocks))
    assert res.product.matrix == res.A_tilde.matrix
    assert res.product.duplicate_classes == ()


def test_nested_invariants():
    with pytest.raises(ValueError):
        NestedInstance([[1, 2]], [[[1]]])  # not a configuration
    with pytest.raises(ValueError):
        NestedInstance([[1, 1]], [[[1]], [[1]]])  # block count
    with pytest.raises(ValueError):
        NestedInstance([[1]], [[[1, 0]]], V=[[1, 1]], w=[[2]])  # V b != w


@st.composite
def tagged_nested(draw):
    d = draw(st.integers(1, 2))
    k = draw(st.integers(1, 2))
    cols = [c for c in itertools.product(range(k + 1), repeat=d) if sum(c) == k]
    cols = draw(st.lists(st.sampled_from(cols), min_size=1, max_size=len(cols), unique=True))
    A = [[c[i] for c in cols] for i in range(d)]
    free = 3 - d
    blocks = []
    for i in range(d):
        lam = draw(st.integers(1, 2))
        blk = [tuple(int(j == i) for j in range(d)) + tuple(draw(st.integers(0, 2)) for _ in range(free))
               for _ in range(lam)]
        blocks.append(blk)
    V = [[int(j == i) for j in range(3)] for i in range(d)]
    w = [[int(j == i) for j in range(d)] for i in range(d)]
    return NestedInstance(A, blocks, V, w)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(tagged_nested(), st.data())
def test_nested_transfer(inst, data):
    res = nested_config(inst)
    S, n = res.B.source, res.A_tilde.cols
    G_B = toric_ideal(res.B, TermOrder.degrevlex(S.num_vars))
    order = data.draw(st.sampled_from([TermOrder.lex(n), TermOrder.degrevlex(n)]))
    H = SemigroupSpec(res.grading, tuple(tuple(row[j] for row in inst.A) for j in range(len(inst.A[0]))))
    p = ContractionProblem(res.A_tilde, res.grading, H, G_B.ideal(), weight_from_order(G_B), order)
    rep = contract_initial(p)
    # the contraction is the toric ideal of the product
    assert rep.groebner.formatted() == toric_ideal(res.product, rep.groebner.order).formatted()
    in_b = G_B.initial_ideal()
    in_at = toric_ideal(res.A_tilde, order).initial_ideal()
    if in_b.delta <= 2 and in_at.delta <= 2:
        assert rep.delta <= 2
    if in_b.is_squarefree and in_at.is_squarefree:
        assert rep.squarefree


def test_fixture_checksum(tmp_path):
    data = load_flagship()
    assert data["sold_products"] == [429, 282, 361, 189, 368, 210, 161]
    assert len(data["P_BA_generators"]) == 33
    from importlib import resources
    doc = json.loads(resources.files("toriccontract").joinpath("data/flagship.json").read_text())
    doc["payload"]["c0"][0] += 1
    bad = tmp_path / "flagship.json"
    bad.write_text(json.dumps(doc))
    with pytest.raises(FixtureError):
        load_flagship(str(bad))


def test_flagship_report():
    rep = flagship_example()
    assert rep.ok, rep.table()
    assert rep.contraction.delta == 2 and rep.contraction.squarefree
    js = rep.to_json()
    assert js["ok"] and len(js["checks"]) == 8
    assert "PASS" in rep.table()
