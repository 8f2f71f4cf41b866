from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from instances import nonneg_maps, term_orders
from toriccontract import linalg
from toriccontract.ring import Grading, Ring, TermOrder
from toriccontract.toric import (EmptyFiber, MonomialMap, SemigroupSpec, UnboundedFiber, decompose,
                                 fiber, fiber_bruteforce, is_configuration, matrix_product_config,
                                 semigroup_generators, toric_ideal)

TABLE1 = [[600, 400, 700, 1200], [30, 30, 20, 40], [20, 10, 30, 50]]
B = [[2, 1, 1, 0, 2, 1, 0], [0, 1, 0, 1, 0, 1, 2], [1, 3, 1, 3, 0, 2, 4], [1, 0, 2, 1, 2, 1, 0]]


def test_identity_has_zero_ideal():
    assert toric_ideal(MonomialMap([[1, 0], [0, 1]])).elements == ()


def test_veronese_quadric():
    G = toric_ideal(MonomialMap([[2, 1, 0], [0, 1, 2]]), TermOrder.lex(3))
    assert G.formatted() == ["x1*x3 - x2^2"]


def test_twisted_cubic_both_methods():
    A = MonomialMap([[1, 1, 1, 1], [0, 1, 2, 3]])
    sat = toric_ideal(A, TermOrder.degrevlex(4), "saturation")
    eli = toric_ideal(A, TermOrder.degrevlex(4), "elimination")
    assert sat.formatted() == eli.formatted()
    assert len(sat) == 3


def test_laurent_matrix():
    G = toric_ideal(MonomialMap([[1, -1]]))
    assert G.formatted() == ["x1*x2 - 1"]


def test_p_b_lex():
    S = Ring.numbered("y", 7)
    G = toric_ideal(MonomialMap(B, S), TermOrder.lex(7))
    assert len(G) == 6
    assert "y5*y7 - y6^2" in G.formatted()


def test_unknown_method():
    with pytest.raises(ValueError):
        toric_ideal(MonomialMap([[1, 1]]), method="magic")


@settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(nonneg_maps(max_entry=2), st.data())
def test_saturation_matches_elimination(amap, data):
    order = data.draw(term_orders(amap.cols))
    sat = toric_ideal(amap, order, "saturation")
    eli = toric_ideal(amap, order, "elimination")
    assert sat.formatted() == eli.formatted()
    for g in sat:
        exps = list(g.terms)
        assert len(exps) == 2
        assert amap.image(exps[0]) == amap.image(exps[1])


def test_integer_kernel():
    K = linalg.integer_kernel(B)
    assert len(K) == 7 - linalg.rank(B)
    for k in K:
        assert all(sum(r * x for r, x in zip(row, k)) == 0 for row in B)


def test_fiber_table_example():
    f = fiber(TABLE1, [3100, 120, 120])
    assert (2, 0, 1, 1) in f and (1, 1, 3, 0) in f
    assert f == sorted(f, reverse=True)
    assert f == fiber_bruteforce(TABLE1, [3100, 120, 120], 8)


def test_fiber_errors_and_empty():
    with pytest.raises(UnboundedFiber):
        fiber([[1, -1]], [0])
    assert fiber([[2, 2]], [3]) == []
    with pytest.raises(ValueError):
        fiber([[1, 1]], [1, 2])


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_fiber_matches_bruteforce(data):
    rows = data.draw(st.integers(1, 2))
    cols = data.draw(st.integers(1, 4))
    V = [[data.draw(st.integers(0, 3)) for _ in range(cols)] for _ in range(rows)]
    for j in range(cols):
        if not any(V[i][j] for i in range(rows)):
            V[0][j] = 1
    a = [data.draw(st.integers(0, 3)) for _ in range(cols)]
    target = [sum(V[i][j] * a[j] for j in range(cols)) for i in range(rows)]
    assert fiber(V, target) == fiber_bruteforce(V, target, sum(a) * 3 + 1)


def test_semigroup_spec():
    spec = SemigroupSpec(Grading([[1, 1, 1]]), ((2,),))
    assert spec.is_case2()
    assert spec.contains((4,)) and not spec.contains((3,))
    gens = semigroup_generators(spec)
    assert len(gens) == 6 and (1, 1, 0) in gens
    with pytest.raises(EmptyFiber):
        semigroup_generators(SemigroupSpec(Grading([[2, 2]]), ((3,),)))


def test_decompose_and_configuration():
    assert decompose((2, 2), [(2, 0), (1, 1), (0, 2)]) is not None
    assert decompose((1, 0), [(2, 0), (1, 1), (0, 2)]) is None
    assert is_configuration(MonomialMap([[2, 1, 0], [0, 1, 2]])) is not None
    assert is_configuration(MonomialMap([[1, 2]])) is None


def test_matrix_product_duplicates():
    At = MonomialMap([[1, 1, 0], [0, 0, 1]])
    Bm = MonomialMap([[1, 1]])
    P = matrix_product_config(Bm, At)
    assert P.matrix == ((1, 1, 1),)
    assert P.duplicate_classes == ((0, 1, 2),)
    with pytest.raises(ValueError):
        matrix_product_config(MonomialMap([[1, 1, 1]]), At)
