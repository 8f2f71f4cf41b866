"""Contraction ideals phi_A^{-1}(I) under monomial maps.

The structured route computes in(phi^{-1}(I)) as in(P_A) + L(in_w(I)) and a
Groebner basis from the lifted family; ``contraction_elimination`` is the
independent oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (
    GroebnerBasis,
    Ideal,
    MonomialIdeal,
    buchberger,
    initial_form,
    initial_ideal_weight,
    is_groebner,
    minimalize,
)
from .ring import BlockOrder, Grading, MonomialOrder, Polynomial, Ring, TermOrder
from .toric import MonomialMap, SemigroupSpec, decompose, semigroup_generators, toric_ideal


class NotInSemigroup(ValueError):
    """The exponent is not an N-combination of the map's columns."""


class BoundTooSmall(ValueError):
    """A module generator of C_H(v) lies beyond the requested degree bound."""


class HypothesesViolated(ValueError):
    """The structured path does not apply; ``invariant`` names the failed check."""

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant
        self.detail = detail


# ---------------------------------------------------------------------------
# problem and report


@dataclass(frozen=True)
class ContractionProblem:
    """phi: R -> S given by ``amap`` (columns in N^s), graded S, ideal I of S."""

    amap: MonomialMap
    grading: Grading
    semigroup: SemigroupSpec
    ideal: Ideal
    weight: tuple
    order: MonomialOrder

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(x) for x in self.weight))
        s = self.ideal.ring.num_vars
        if self.amap.rows != s:
            raise ValueError(f"map has {self.amap.rows} rows but S has {s} variables")
        if self.grading.num_vars != s:
            raise ValueError(f"grading has {self.grading.num_vars} columns but S has {s} variables")
        if len(self.weight) != s:
            raise ValueError(f"weight {self.weight} does not match {s} variables of S")
        if self.order.num_vars != self.amap.cols:
            raise ValueError("order does not match the source ring")

    @property
    def source(self) -> Ring:
        return self.amap.source

    @property
    def target(self) -> Ring:
        return self.ideal.ring

    @classmethod
    def from_json(cls, doc: dict) -> "ContractionProblem":
        """Build from {matrix, grading, h_generators, ideal, weight, order, [target], [source]}."""
        matrix = doc["matrix"]
        s, r = len(matrix), len(matrix[0])
        target = Ring(tuple(doc["target"])) if "target" in doc else Ring.numbered("y", s)
        source = Ring(tuple(doc["source"])) if "source" in doc else Ring.numbered("x", r)
        amap = MonomialMap(matrix, source)
        grading = Grading(doc["grading"])
        semigroup = SemigroupSpec(grading, tuple(tuple(h) for h in doc["h_generators"]))
        ideal = Ideal.parse(target, doc.get("ideal", []))
        order = TermOrder.parse(doc["order"], source)
        return cls(amap, grading, semigroup, ideal, tuple(doc["weight"]), order)


@dataclass(frozen=True)
class ContractionReport:
    groebner: GroebnerBasis
    initial: MonomialIdeal
    delta: int
    squarefree: bool
    bound_inputs: tuple
    squarefree_inputs: tuple
    pullback: tuple
    lifted: tuple = field(default=())
    lifted_is_groebner: bool = False

    def to_json(self) -> dict:
        return {
            "groebner": self.groebner.to_json(),
            "initial": self.initial.format(),
            "delta": self.delta,
            "squarefree": self.squarefree,
            "bound_inputs": list(self.bound_inputs),
            "squarefree_inputs": list(self.squarefree_inputs),
            "pullback_weight": list(self.pullback),
            "lifted": [g.format(self.groebner.order) for g in self.lifted],
            "lifted_is_groebner": self.lifted_is_groebner,
        }


# ---------------------------------------------------------------------------
# weights and monomial ideals


def pullback_weight(amap: MonomialMap, w: Sequence[int]) -> tuple:
    """w' = w . A, the weight of phi(x_j) for every source variable."""
    if len(w) != amap.rows:
        raise ValueError(f"weight of length {len(w)} for a map with {amap.rows} rows")
    out = tuple(sum(a * b for a, b in zip(w, amap.column(j))) for j in range(amap.cols))
    if any(x < 0 for x in out):
        raise ValueError(f"pulled-back weight {out} has negative entries")
    return out


def monomial_contraction_basis(amap: MonomialMap, I: MonomialIdeal, order: MonomialOrder,
                               G_A: GroebnerBasis | None = None) -> MonomialIdeal:
    """M(I): minimal generators of the monomial ideal spanned by the standard
    monomials (outside in(P_A)) whose image lies in I.

    Walks the standard monomials degree by degree up to delta(I); a monomial
    whose image is in I is recorded and not extended.
    """
    R = amap.source
    if I.is_zero():
        return MonomialIdeal(R, ())
    if G_A is None:
        G_A = toric_ideal(amap, order)
    in_pa = G_A.initial_ideal()
    r = amap.cols
    found = []
    shell = {(0,) * r}
    for deg in range(I.delta + 1):
        nxt = set()
        for m in sorted(shell):
            if amap.image(m) in I:
                found.append(m)
                continue
            if deg == I.delta:
                continue
            for j in range(r):
                e = m[:j] + (m[j] + 1,) + m[j + 1:]
                if e not in in_pa:
                    nxt.add(e)
        shell = {e for e in nxt if not any(_divides(f, e) for f in found)}
    return MonomialIdeal(R, tuple(minimalize(found)))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# the oracle


def contraction_elimination(amap: MonomialMap, ideal: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """phi^{-1}(I) = (I + <x_j - y^{a_j}>) cap R, by eliminating the y block."""
    if not amap.is_nonnegative():
        raise ValueError("contraction needs a non-negative matrix")
    R, S = amap.source, ideal.ring
    if S.num_vars != amap.rows:
        raise ValueError("ideal ring does not match the map")
    s, r = S.num_vars, R.num_vars
    big = Ring(tuple(f"_y{i}" for i in range(s)) + R.names)
    gens = []
    for g in ideal.generators:
        gens.append(Polynomial(big, {e + (0,) * r: c for e, c in g.terms.items()}))
    for j in range(r):
        col = amap.column(j)
        gens.append(Polynomial(big, {(0,) * s + tuple(int(k == j) for k in range(r)): 1, col + (0,) * r: -1}))
    inner = TermOrder.degrevlex(r)
    gb = buchberger(Ideal(big, tuple(gens)), BlockOrder(s + r, range(s), inner))
    kept = tuple(Polynomial(R, {e[s:]: c for e, c in g.terms.items()})
                 for g in gb.elements if all(not any(e[:s]) for e in g.terms))
    return buchberger(Ideal(R, kept), order if order is not None else inner)


# ---------------------------------------------------------------------------
# preimages and lifts


def preimage_monomial(amap: MonomialMap, u: Sequence[int]) -> tuple:
    """The lexicographically smallest c in N^r with A . c = u."""
    u = tuple(int(x) for x in u)
    if len(u) != amap.rows:
        raise ValueError(f"exponent {u} does not match {amap.rows} rows")
    if not amap.is_nonnegative():
        raise ValueError("preimages need a non-negative matrix")
    cols = amap.columns()
    r = len(cols)
    memo: dict = {}

    def feasible(i, rem):
        # can columns i.. reach rem exactly?
        if not any(rem):
            return True
        if i == r:
            return False
        key = (i, rem)
        if key in memo:
            return memo[key]
        col = cols[i]
        ok = False
        if any(col):
            k = 0
            cur = rem
            while all(x >= 0 for x in cur):
                if feasible(i + 1, cur):
                    ok = True
                    break
                k += 1
                cur = tuple(x - c for x, c in zip(cur, col))
        else:
            ok = feasible(i + 1, rem)
        memo[key] = ok
        return ok

    if any(x < 0 for x in u) or not feasible(0, u):
        raise NotInSemigroup(f"{u} is not in the semigroup of the columns")
    c = []
    rem = u
    for i in range(r):
        col = cols[i]
        k = 0
        if any(col):
            while not feasible(i + 1, rem):
                k += 1
                rem = tuple(x - y for x, y in zip(rem, col))
        c.append(k)
    return tuple(c)


def lift(q: Polynomial, amap: MonomialMap, G_A: GroebnerBasis) -> Polynomial:
    """The unique standard preimage of q: termwise normal form of preimages."""
    R = amap.source
    out = R.zero()
    for e, c in q.terms.items():
        out = out + G_A.reduce(R.monomial(preimage_monomial(amap, e), c))
    return out


# ---------------------------------------------------------------------------
# module generators Gamma_H(v)


def gamma(semigroup: SemigroupSpec, v: Sequence[int], amap: MonomialMap | None = None,
          degree_bound: int | None = None) -> list:
    """Monomial generators y^a of C_H(v) = {y^a : V . a in -v + H} over K[A_H].

    Works in class coordinates (case 2), where membership and divisibility by
    an algebra generator only depend on the class counts of a.  If
    c + v = sum m_j g_j with every used g_j not below c, then m_j <= max(v),
    so generators have degree at most max(v) * sum |g_j|; that bound is the
    default, and a smaller ``degree_bound`` is checked against it.
    """
    if not semigroup.is_case2():
        from .toric import UnsupportedSemigroup

        raise UnsupportedSemigroup("Gamma is implemented only for linearly independent distinct degrees")
    V = semigroup.grading
    distinct = semigroup.distinct_degrees()
    classes = [[i for i in range(V.num_vars) if V.column(i) == dc] for dc in distinct]
    vc = semigroup.coordinates(v)
    if vc is None or any(x < 0 for x in vc):
        raise ValueError(f"degree {tuple(v)} is not in N V")
    if amap is None:
        gen_cols = semigroup_generators(semigroup)
    else:
        gen_cols = [c for c in amap.columns() if any(c)]
    gcc = sorted({_class_counts(c, classes) for c in gen_cols})
    gcc = [g for g in gcc if any(g)]
    proven = max(vc, default=0) * sum(sum(g) for g in gcc)
    bound = proven if degree_bound is None else min(degree_bound, proven)

    def in_module(n):
        deg = tuple(sum(nk * dk[i] for nk, dk in zip(n, distinct)) + vi for i, vi in enumerate(v))
        return semigroup.contains(deg)

    gens = []
    m = len(distinct)
    for total in range(proven + 1):
        for n in _compositions(total, m):
            if not in_module(n):
                continue
            if any(all(a <= b for a, b in zip(g, n)) and in_module(tuple(b - a for a, b in zip(g, n))) for g in gcc):
                continue
            if total > bound:
                raise BoundTooSmall(f"generator of class counts {n} has degree {total} > {bound}")
            gens.append(n)
    out = []
    for n in gens:
        per_class = [list(_compositions(k, len(cl))) for k, cl in zip(n, classes)]
        for combo in itertools.product(*per_class):
            a = [0] * V.num_vars
            for cl, comp in zip(classes, combo):
                for i, x in zip(cl, comp):
                    a[i] = x
            out.append(tuple(a))
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


def _class_counts(a, classes) -> tuple:
    return tuple(sum(a[i] for i in cl) for cl in classes)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# lifted families


def lift_family(F: Sequence[Polynomial], problem: ContractionProblem,
                G_A: GroebnerBasis | None = None) -> list:
    """G_A together with lift(y^a f) for f in F and y^a in Gamma_H(deg f)."""
    amap, V = problem.amap, problem.grading
    if G_A is None:
        G_A = toric_ideal(amap, problem.order)
    out = list(G_A.elements)
    seen = set(out)
    for f in F:
        if f.is_zero():
            continue
        if not V.is_homogeneous(f):
            raise ValueError(f"{f} is not homogeneous for the grading")
        v = V.degree(f)
        for a in gamma(problem.semigroup, v, amap):
            g = lift(f.mul_monomial(a), amap, G_A)
            if not g.is_zero() and g not in seen:
                seen.add(g)
                out.append(g)
    return out


def equigenerated_certificate(M_sets: Sequence[MonomialIdeal]) -> list:
    """For each set: do all minimal generators share one total degree?"""
    return [len({sum(e) for e in M.generators}) <= 1 for M in M_sets]


# ---------------------------------------------------------------------------
# the pipeline


def check_hypotheses(problem: ContractionProblem):
    """Raise ``HypothesesViolated`` unless the structured path is licensed.

    Returns the weight-initial data of I (reused by ``contract_initial``).
    """
    amap, V, H, I = problem.amap, problem.grading, problem.semigroup, problem.ideal
    if not amap.is_nonnegative():
        raise HypothesesViolated("nonnegative_map", "the columns of A_H must lie in N^s")
    if not H.is_case2():
        raise HypothesesViolated("semigroup_case2",
                                 "distinct degree columns are not linearly independent, "
                                 "so generation of the semigroup cannot be certified")
    for j, col in enumerate(amap.columns()):
        if not H.contains(V.multidegree(col)):
            raise HypothesesViolated("columns_generate_semigroup",
                                     f"column {j + 1} has degree {V.multidegree(col)} outside H")
    cols = amap.columns()
    for a in semigroup_generators(H):
        if decompose(a, cols) is None:
            raise HypothesesViolated("columns_generate_semigroup",
                                     f"{a} has degree in H but is not a sum of columns")
    for g in I.generators:
        if not V.is_homogeneous(g):
            raise HypothesesViolated("ideal_homogeneous", f"{g} is not homogeneous for the grading")
    tiebreak = TermOrder.degrevlex(I.ring.num_vars)
    inw = initial_ideal_weight(I, problem.weight, tiebreak)
    if not inw.monomial:
        raise HypothesesViolated("initial_w_monomial", "in_w(I) is not a monomial ideal")
    return inw


def contract_initial(problem: ContractionProblem, G_A: GroebnerBasis | None = None) -> ContractionReport:
    """Initial ideal and Groebner basis of phi^{-1}(I) under the order refined by w'."""
    inw = check_hypotheses(problem)
    amap, order = problem.amap, problem.order
    if G_A is None:
        G_A = toric_ideal(amap, order)
    in_w = inw.monomial_ideal()
    M = monomial_contraction_basis(amap, in_w, order, G_A)
    in_pa = G_A.initial_ideal()
    initial = in_pa + M
    wp = pullback_weight(amap, problem.weight)
    refined = order.refine(wp)
    F = inw.groebner.elements
    lifted = lift_family(F, problem, G_A)
    gb = buchberger(Ideal(amap.source, tuple(lifted)), refined)
    if gb.initial_ideal().generators != initial.generators:
        raise AssertionError(f"initial ideal {gb.initial_ideal().format()} differs from "
                             f"in(P_A) + L(in_w(I)) = {initial.format()}")
    delta = initial.delta
    bound_inputs = (in_w.delta, in_pa.delta)
    sq_inputs = (in_w.is_squarefree, in_pa.is_squarefree)
    if delta > max(bound_inputs):
        raise AssertionError(f"delta {delta} exceeds {bound_inputs}")
    if all(sq_inputs) and not initial.is_squarefree:
        raise AssertionError("square-free inputs gave a non-square-free initial ideal")
    return ContractionReport(
        groebner=gb,
        initial=initial,
        delta=delta,
        squarefree=initial.is_squarefree,
        bound_inputs=bound_inputs,
        squarefree_inputs=sq_inputs,
        pullback=wp,
        lifted=tuple(lifted),
        lifted_is_groebner=is_groebner(lifted, refined),
    )


def weight_initial_of_contraction(amap: MonomialMap, ideal: Ideal, w: Sequence[int],
                                  order: MonomialOrder | None = None) -> MonomialIdeal | Ideal:
    """in_{w'}(phi^{-1}(I)) computed through the oracle (monomial ideal when it is one)."""
    wp = pullback_weight(amap, w)
    base = order if order is not None else TermOrder.degrevlex(amap.cols)
    gb = contraction_elimination(amap, ideal, base.refine(wp))
    forms = tuple(initial_form(g, wp) for g in gb.elements)
    if all(f.is_monomial() for f in forms):
        return MonomialIdeal(amap.source, tuple(next(iter(f.terms)) for f in forms))
    return Ideal(amap.source, forms)

