"""Hypothesis strategies producing small random instances for the property suites."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from toriccontract.applications import FiberProductInstance
from toriccontract.contraction import ContractionProblem
from toriccontract.groebner import Ideal, MonomialIdeal, buchberger, weight_from_order
from toriccontract.ring import Grading, Polynomial, Ring, TermOrder
from toriccontract.toric import MonomialMap, SemigroupSpec, fiber, semigroup_generators

coeffs = st.sampled_from([1, -1, 2, -2, 3, -3])


@st.composite
def term_orders(draw, n: int) -> TermOrder:
    kind = draw(st.sampled_from(["lex", "degrevlex"]))
    priority = draw(st.permutations(range(n)))
    return TermOrder(kind, tuple(priority))


@st.composite
def exponents(draw, n: int, max_entry: int = 3) -> tuple:
    return tuple(draw(st.lists(st.integers(0, max_entry), min_size=n, max_size=n)))


@st.composite
def polynomials(draw, ring: Ring, max_terms: int = 3, max_degree: int = 3) -> Polynomial:
    n = ring.num_vars
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = draw(exponents(n, max_degree))
        while sum(e) > max_degree:
            e = tuple(max(0, x - 1) for x in e)
        terms[e] = Fraction(draw(coeffs))
    return Polynomial(ring, terms)


@st.composite
def small_ideals(draw, max_vars: int = 3, max_gens: int = 3, max_degree: int = 3) -> Ideal:
    n = draw(st.integers(1, max_vars))
    ring = Ring.numbered("x", n)
    gens = draw(st.lists(polynomials(ring, 3, max_degree), min_size=1, max_size=max_gens))
    return Ideal(ring, tuple(g for g in gens if not g.is_zero()))


@st.composite
def monomial_ideals(draw, ring: Ring, max_gens: int = 3, max_degree: int = 3) -> MonomialIdeal:
    gens = []
    for _ in range(draw(st.integers(1, max_gens))):
        e = draw(exponents(ring.num_vars, max_degree))
        while sum(e) > max_degree:
            e = tuple(max(0, x - 1) for x in e)
        if any(e):
            gens.append(e)
    if not gens:
        gens = [tuple(int(i == 0) for i in range(ring.num_vars))]
    return MonomialIdeal(ring, tuple(gens))


@st.composite
def nonneg_maps(draw, max_rows: int = 3, max_cols: int = 4, max_entry: int = 3) -> MonomialMap:
    s = draw(st.integers(1, max_rows))
    r = draw(st.integers(1, max_cols))
    cols = []
    for _ in range(r):
        c = draw(st.lists(st.integers(0, max_entry), min_size=s, max_size=s))
        if not any(c):
            c[draw(st.integers(0, s - 1))] = 1
        cols.append(c)
    return MonomialMap.from_columns(cols, Ring.numbered("x", r))


# ---------------------------------------------------------------------------
# graded contraction problems satisfying the structured-path hypotheses


@st.composite
def case2_gradings(draw) -> tuple:
    """(V, H generators): variables split into blocks, block b of degree c_b e_b."""
    nblocks = draw(st.integers(1, 2))
    sizes = [draw(st.integers(1, 3 if nblocks == 1 else 2)) for _ in range(nblocks)]
    scales = [draw(st.sampled_from([1, 1, 2])) for _ in range(nblocks)]
    s = sum(sizes)
    rows = []
    start = 0
    for b in range(nblocks):
        rows.append([scales[b] if start <= i < start + sizes[b] else 0 for i in range(s)])
        start += sizes[b]
    hgens = []
    for _ in range(draw(st.integers(1, 2))):
        mult = [draw(st.integers(0, 2)) for _ in range(nblocks)]
        # mostly ask for a generator of total multiplicity >= 2, so that P_A is nonzero
        while sum(mult) < 2 and not (any(mult) and draw(st.integers(0, 3)) == 0):
            mult[draw(st.integers(0, nblocks - 1))] += 1
        hgens.append(tuple(m * c for m, c in zip(mult, scales)))
    return rows, tuple(sorted(set(hgens)))


@st.composite
def homogeneous_polynomial(draw, ring: Ring, grading: Grading, max_degree: int = 3) -> Polynomial:
    s = ring.num_vars
    a = draw(exponents(s, max_degree))
    while sum(a) > max_degree:
        a = tuple(max(0, x - 1) for x in a)
    if not any(a):
        a = tuple(int(i == 0) for i in range(s))
    monos = fiber(grading, grading.multidegree(a))
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=3, unique=True))
    return Polynomial(ring, {m: Fraction(draw(coeffs)) for m in picks})


@st.composite
def contraction_problems(draw, max_cols: int = 6) -> ContractionProblem:
    rows, hgens = draw(case2_gradings())
    grading = Grading(rows)
    spec = SemigroupSpec(grading, hgens)
    cols = semigroup_generators(spec)
    if len(cols) > max_cols:
        hgens = hgens[:1]
        spec = SemigroupSpec(grading, hgens)
        cols = semigroup_generators(spec)
    S = Ring.numbered("y", len(rows[0]))
    R = Ring.numbered("x", len(cols))
    amap = MonomialMap.from_columns(cols, R)
    gens = draw(st.lists(homogeneous_polynomial(S, grading), min_size=1, max_size=2))
    ideal = Ideal(S, tuple(gens))
    G = buchberger(ideal, draw(term_orders(S.num_vars)))
    w = weight_from_order(G)
    order = draw(term_orders(R.num_vars))
    return ContractionProblem(amap, grading, spec, ideal, w, order)


@st.composite
def fiber_product_instances(draw) -> FiberProductInstance:
    d = draw(st.integers(1, 2))
    s = tuple(draw(st.integers(1, 3)) for _ in range(d))
    t = tuple(draw(st.integers(1, 3)) for _ in range(d))
    inst = FiberProductInstance(s, t)
    S1, S2, _ = inst.rings()

    def block_grading(sizes):
        n = sum(sizes)
        starts = [sum(sizes[:i]) for i in range(d)]
        return Grading([[1 if starts[i] <= v < starts[i] + sizes[i] else 0 for v in range(n)] for i in range(d)])

    gens1 = draw(st.lists(homogeneous_polynomial(S1, block_grading(s), 2), max_size=2))
    gens2 = draw(st.lists(homogeneous_polynomial(S2, block_grading(t), 2), max_size=2))
    return FiberProductInstance(s, t, tuple(g.format() for g in gens1), tuple(g.format() for g in gens2))
