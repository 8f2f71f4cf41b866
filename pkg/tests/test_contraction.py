from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import contraction_problems
from toriccontract.contraction import (BoundTooSmall, ContractionProblem, HypothesesViolated,
                                       NotInSemigroup, check_hypotheses, contract_initial,
                                       contraction_elimination, equigenerated_certificate, gamma,
                                       lift, lift_family, monomial_contraction_basis,
                                       preimage_monomial, pullback_weight,
                                       weight_initial_of_contraction)
from toriccontract.groebner import Ideal, MonomialIdeal, buchberger, initial_ideal_weight
from toriccontract.ring import Grading, Ring, TermOrder
from toriccontract.toric import MonomialMap, SemigroupSpec, toric_ideal

S2 = Ring.numbered("y", 2)
R3 = Ring.numbered("x", 3)
VERONESE = MonomialMap.from_columns([(2, 0), (1, 1), (0, 2)], R3)
LEX321 = TermOrder.lex(3, (2, 1, 0))
H2 = SemigroupSpec(Grading([[1, 1]]), ((2,),))


def section_example(ideal=("y1*y2^3",), weight=(1, 1)):
    return ContractionProblem(VERONESE, Grading([[1, 1]]), H2, Ideal.parse(S2, ideal), weight, LEX321)


def negative_control():
    amap = MonomialMap([[1, 1], [0, 1]], Ring.numbered("x", 2))
    spec = SemigroupSpec(Grading([[1, 1]]), ((1,),))
    return ContractionProblem(amap, Grading([[1, 1]]), spec, Ideal.parse(S2, ["y1 + y2"]), (2, 1),
                              TermOrder.lex(2))


def same_ideal(F, G, ring, order):
    a = buchberger(Ideal(ring, tuple(F)), order)
    b = buchberger(Ideal(ring, tuple(G)), order)
    return a.formatted() == b.formatted()


# ---------------------------------------------------------------------------
# examples


def test_pullback_weight():
    assert pullback_weight(MonomialMap([[1, 1], [0, 1]]), (2, 1)) == (2, 3)
    assert pullback_weight(VERONESE, (0, 0)) == (0, 0, 0)
    assert pullback_weight(VERONESE, (1, 1)) == (2, 2, 2)
    with pytest.raises(ValueError):
        pullback_weight(VERONESE, (1, 1, 1))


def test_monomial_contraction_basis_examples():
    M = monomial_contraction_basis(VERONESE, MonomialIdeal(S2, ((1, 3),)), LEX321)
    assert M.format() == ["x2*x3", "x2^3"]
    assert monomial_contraction_basis(VERONESE, MonomialIdeal(S2, ((0, 0),)), LEX321).generators == ((0, 0, 0),)
    M = monomial_contraction_basis(VERONESE, MonomialIdeal(S2, ((2, 0),)), LEX321)
    assert M.format() == ["x1", "x2^2"]


def test_oracle_examples():
    p = negative_control()
    assert contraction_elimination(p.amap, p.ideal).formatted() == ["x1^2 + x2"]
    zero = contraction_elimination(VERONESE, Ideal(S2, ()), LEX321)
    assert zero.formatted() == toric_ideal(VERONESE, LEX321).formatted()
    G = contraction_elimination(VERONESE, Ideal.parse(S2, ["y1*y2^3"]), LEX321)
    assert same_ideal(G.elements, [R3.parse("x2*x3"), R3.parse("x1*x3 - x2^2")], R3, LEX321)


def test_preimage_and_lift():
    assert preimage_monomial(VERONESE, (1, 3)) == (0, 1, 1)
    assert preimage_monomial(VERONESE, (2, 0)) == (1, 0, 0)
    with pytest.raises(NotInSemigroup):
        preimage_monomial(VERONESE, (1, 0))
    G = toric_ideal(VERONESE, LEX321)
    assert lift(S2.parse("y1*y2^3"), VERONESE, G) == R3.parse("x2*x3")
    assert lift(S2.parse("y1^2"), VERONESE, G) == R3.parse("x1")
    assert lift(S2.parse("y1^2*y2^2"), VERONESE, G) == R3.parse("x2^2")


def test_gamma_examples():
    spec = SemigroupSpec(Grading([[1, 1, 1]]), ((2,),))
    assert gamma(spec, (1,)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert gamma(H2, (4,)) == [(0, 0)]
    # fiber-product grading with d = 1, s = 1, t = 2: y has degree (1,0), z_k degree (0,1)
    fp = SemigroupSpec(Grading([[1, 0, 0], [0, 1, 1]]), ((1, 1),))
    assert gamma(fp, (1, 0)) == [(0, 1, 0), (0, 0, 1)]
    with pytest.raises(BoundTooSmall):
        gamma(spec, (1,), degree_bound=0)


def test_lift_family_examples():
    p = section_example()
    fam = lift_family(list(p.ideal.generators), p)
    assert {g.format(LEX321) for g in fam} == {"x1*x3 - x2^2", "x2*x3"}
    assert [g.format() for g in lift_family([], p)] == ["x1*x3 - x2^2"]


def test_equigenerated_certificate():
    assert equigenerated_certificate([MonomialIdeal(R3, ((0, 1, 1), (0, 3, 0)))]) == [False]
    assert equigenerated_certificate([MonomialIdeal(R3, ((0, 1, 1),))]) == [True]


def test_contract_initial_section_example():
    rep = contract_initial(section_example())
    assert sorted(rep.initial.format()) == ["x1*x3", "x2*x3", "x2^3"]
    assert rep.delta == 3 and not rep.squarefree
    assert sorted(rep.groebner.formatted()) == ["x1*x3 - x2^2", "x2*x3", "x2^3"]
    assert not rep.lifted_is_groebner
    js = rep.to_json()
    assert js["delta"] == 3 and js["squarefree"] is False


def test_contract_initial_zero_ideal():
    rep = contract_initial(section_example(ideal=()))
    assert rep.initial.format() == ["x1*x3"]
    assert rep.delta == 2 == rep.bound_inputs[1]


def test_negative_control():
    p = negative_control()
    with pytest.raises(HypothesesViolated) as err:
        contract_initial(p)
    assert err.value.invariant == "columns_generate_semigroup"
    wi = weight_initial_of_contraction(p.amap, p.ideal, p.weight)
    assert wi.format() == ["x1^2"]
    inw = initial_ideal_weight(p.ideal, p.weight, TermOrder.lex(2)).monomial_ideal()
    pulled = contraction_elimination(p.amap, Ideal(S2, tuple(inw.polynomials())))
    assert sorted(pulled.formatted()) == ["x1", "x2"]


def test_hypotheses_refusals():
    with pytest.raises(HypothesesViolated) as err:
        check_hypotheses(section_example(ideal=("y1 + y2^2",)))
    assert err.value.invariant == "ideal_homogeneous"
    with pytest.raises(HypothesesViolated) as err:
        check_hypotheses(section_example(ideal=("y1^2 - y2^2",), weight=(1, 1)))
    assert err.value.invariant == "initial_w_monomial"
    bad_cols = MonomialMap.from_columns([(2, 0), (0, 2)], Ring.numbered("x", 2))
    p = ContractionProblem(bad_cols, Grading([[1, 1]]), H2, Ideal(S2, ()), (1, 1), TermOrder.lex(2))
    with pytest.raises(HypothesesViolated) as err:
        check_hypotheses(p)
    assert err.value.invariant == "columns_generate_semigroup"


def test_problem_from_json():
    p = ContractionProblem.from_json({
        "matrix": [[2, 1, 0], [0, 1, 2]], "grading": [[1, 1]], "h_generators": [[2]],
        "ideal": ["y1*y2^3"], "weight": [1, 1], "order": "lex:x3,x2,x1"})
    assert sorted(contract_initial(p).initial.format()) == ["x1*x3", "x2*x3", "x2^3"]


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=100, deadline=None)
@given(contraction_problems(), st.data())
def test_gamma_matches_definition(p, data):
    """Brute force: minimal monomials y^a with V a in -v + H, up to the proven bound."""
    H, V = p.semigroup, p.grading
    s = V.num_vars
    a0 = tuple(data.draw(st.integers(0, 2)) for _ in range(s))
    v = V.multidegree(a0)
    got = gamma(H, v, p.amap)
    in_mod = lambda a: H.contains(tuple(x + y for x, y in zip(V.multidegree(a), v)))
    cols = [c for c in p.amap.columns() if any(c)]
    bound = max((sum(g) for g in got), default=0) + 2
    brute = []
    for deg in range(bound + 1):
        for c in itertools.combinations_with_replacement(range(s), deg):
            a = tuple(c.count(j) for j in range(s))
            if not in_mod(a):
                continue
            if any(all(x <= y for x, y in zip(col, a)) and in_mod(tuple(y - x for x, y in zip(col, a)))
                   for col in cols):
                continue
            brute.append(a)
    assert sorted(brute) == sorted(got)
