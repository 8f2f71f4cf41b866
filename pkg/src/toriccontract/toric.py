"""Toric ideals of integer matrices, fibers, and semigroup generators."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .groebner import GroebnerBasis, Ideal, buchberger
from .ring import BlockOrder, Grading, MatrixOrder, MonomialOrder, Polynomial, Ring, TermOrder


class UnboundedFiber(ValueError):
    """No finiteness certificate exists for the requested fiber."""


class UnsupportedSemigroup(ValueError):
    """The semigroup is outside the implemented case (linearly independent distinct degrees)."""


class EmptyFiber(ValueError):
    pass


def _as_matrix(matrix) -> tuple:
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if not m or not m[0]:
        raise ValueError("matrix must be non-empty")
    if len({len(r) for r in m}) != 1:
        raise ValueError("matrix rows have unequal length")
    return m


@dataclass(frozen=True)
class MonomialMap:
    """phi_A: K[x_1..x_s] -> K[z^{+-1}], x_i -> z^{a_i} for the columns a_i of ``matrix``."""

    matrix: tuple
    source: Ring = None
    duplicate_classes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if self.source is None:
            object.__setattr__(self, "source", Ring.numbered("x", len(m[0])))
        elif self.source.num_vars != len(m[0]):
            raise ValueError(f"ring {self.source} does not match {len(m[0])} columns")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0])

    def column(self, i: int) -> tuple:
        return tuple(row[i] for row in self.matrix)

    def columns(self) -> list:
        return [self.column(i) for i in range(self.cols)]

    def image(self, exp: Sequence[int]) -> tuple:
        """A . exp"""
        return tuple(sum(r * e for r, e in zip(row, exp)) for row in self.matrix)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.matrix for x in row)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], source: Ring | None = None) -> "MonomialMap":
        cols = [tuple(c) for c in cols]
        if not cols:
            raise ValueError("need at least one column")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(len(cols[0]))), source)


# ---------------------------------------------------------------------------
# toric ideals by elimination


def toric_ideal(amap: MonomialMap, order: MonomialOrder | None = None,
                method: str = "auto") -> GroebnerBasis:
    """Reduced Groebner basis of ker(phi_A) under ``order`` (degrevlex by default).

    ``method="saturation"`` starts from the lattice ideal of a basis of
    ker_Z(A) and saturates it one variable at a time; it needs a positive
    grading (some lam with lam . a_i > 0).  ``method="elimination"`` works in
    K[z, t, x] instead.  ``"auto"`` picks saturation whenever it applies.
    """
    if order is None:
        order = TermOrder.degrevlex(amap.cols)
    if method not in ("auto", "saturation", "elimination"):
        raise ValueError(f"unknown method {method!r}")
    lam = linalg.positive_functional(amap.columns()) if method != "elimination" else None
    if lam is None:
        if method == "saturation":
            raise UnsupportedSemigroup("saturation needs a positive grading of the columns")
        gens = _toric_by_elimination(amap)
    else:
        gens = _toric_by_saturation(amap, lam)
    return buchberger(Ideal(amap.source, tuple(gens)), order)


def _binomial(ring: Ring, u: Sequence[int]) -> Polynomial:
    plus = tuple(max(x, 0) for x in u)
    minus = tuple(max(-x, 0) for x in u)
    return Polynomial(ring, {plus: 1, minus: -1})


def _toric_by_saturation(amap: MonomialMap, lam: tuple):
    src = amap.source
    s = amap.cols
    scale = math.lcm(*(Fraction(x).denominator for x in lam))
    w = [int(sum(Fraction(l) * scale * a for l, a in zip(lam, amap.column(i)))) for i in range(s)]
    gens = [_binomial(src, u) for u in linalg.integer_kernel(amap.matrix)]
    for var in range(s):
        if not gens:
            break
        # w-degree first, then reverse lex with x_var smallest
        rest = [i for i in range(s) if i != var]
        mat = [w, [-int(k == var) for k in range(s)]]
        mat += [[-int(k == i) for k in range(s)] for i in reversed(rest[1:])]
        order = MatrixOrder(mat)
        gb = buchberger(Ideal(src, tuple(gens)), order)
        gens = [_strip_var(g, var) for g in gb.elements]
    return gens


def _strip_var(g: Polynomial, var: int) -> Polynomial:
    k = min(e[var] for e in g.terms)
    if not k:
        return g
    return Polynomial(g.ring, {e[:var] + (e[var] - k,) + e[var + 1:]: c for e, c in g.terms.items()})


def _toric_by_elimination(amap: MonomialMap):
    """Builds <x_i - z^{a_i}> (+ <t z_1...z_mu - 1> when A has negative entries,
    with z^{-c} written as t^m prod z_k^{m - c_k}, m = sum c) and eliminates
    {z, t} under a block order whose source block is degrevlex."""
    src = amap.source
    s, mu = amap.cols, amap.rows
    elim_order = TermOrder.degrevlex(s)
    need_t = not amap.is_nonnegative()
    extra = mu + (1 if need_t else 0)
    names = tuple(f"_z{j}" for j in range(mu)) + (("_t",) if need_t else ()) + src.names
    big = Ring(names)
    n = big.num_vars
    gens = []
    for i in range(s):
        col = amap.column(i)
        pos = [max(a, 0) for a in col]
        neg = [max(-a, 0) for a in col]
        m = sum(neg)
        zexp = [p + (m - q if m else 0) for p, q in zip(pos, neg)]
        exp_img = zexp + ([m] if need_t else [])
        e_img = tuple(exp_img) + (0,) * s
        e_x = (0,) * extra + tuple(int(k == i) for k in range(s))
        gens.append(Polynomial(big, {e_x: 1, e_img: -1}))
    if need_t:
        gens.append(Polynomial(big, {(1,) * mu + (1,) + (0,) * s: 1, (0,) * n: -1}))
    block = BlockOrder(n, range(extra), elim_order)
    gb = buchberger(Ideal(big, tuple(gens)), block)
    kept = []
    for g in gb.elements:
        if all(e[:extra] == (0,) * extra for e in g.terms):
            kept.append(Polynomial(src, {e[extra:]: c for e, c in g.terms.items()}))
    return kept


def toric_ideal_generators(amap: MonomialMap, order: MonomialOrder | None = None) -> Ideal:
    return toric_ideal(amap, order).ideal()


# ---------------------------------------------------------------------------
# fibers


def fiber(grading: Grading | Sequence[Sequence[int]], target: Sequence[int]) -> list:
    """All a in N^s with V . a = target, sorted descending lexicographically.

    Requires a finiteness certificate: the distinct columns of V are linearly
    independent, or some rational lam has lam . v_i > 0 for every column.
    """
    V = grading.matrix if isinstance(grading, Grading) else _as_matrix(grading)
    target = tuple(int(x) for x in target)
    if len(target) != len(V):
        raise ValueError(f"target {target} has length {len(target)}, grading has {len(V)} rows")
    cols = linalg.columns(V)
    distinct = linalg.distinct_columns(V)
    if linalg.columns_independent(distinct):
        return _fiber_independent(cols, distinct, target)
    lam = linalg.positive_functional(cols)
    if lam is None:
        raise UnboundedFiber(f"no finiteness certificate for the fiber of {V}")
    return _fiber_backtrack(cols, lam, target)


def _fiber_independent(cols, distinct, target):
    d = len(target)
    transposed = [[c[i] for c in distinct] for i in range(d)]
    coef = linalg.solve(transposed, target)
    if coef is None or any(x.denominator != 1 or x < 0 for x in coef):
        return []
    counts = [int(x) for x in coef]
    classes = [[i for i, c in enumerate(cols) if c == dc] for dc in distinct]
    per_class = [list(_compositions(cnt, len(cl))) for cnt, cl in zip(counts, classes)]
    out = []
    for combo in itertools.product(*per_class):
        a = [0] * len(cols)
        for cl, comp in zip(classes, combo):
            for i, v in zip(cl, comp):
                a[i] = v
        out.append(tuple(a))
    out.sort(reverse=True)
    return out


def _compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` parts, descending lex."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _fiber_backtrack(cols, lam, target):
    s = len(cols)
    lv = [sum(x * y for x, y in zip(lam, c)) for c in cols]
    out = []

    def rec(i, rem, acc):
        lr = sum(x * y for x, y in zip(lam, rem))
        if lr < 0:
            return
        if i == s:
            if not any(rem):
                out.append(tuple(acc))
            return
        bound = math.floor(lr / lv[i])
        col = cols[i]
        for k in range(bound, -1, -1):
            acc.append(k)
            rec(i + 1, tuple(r - k * c for r, c in zip(rem, col)), acc)
            acc.pop()

    rec(0, target, [])
    out.sort(reverse=True)
    return out


def fiber_bruteforce(V: Sequence[Sequence[int]], target: Sequence[int], bound: int) -> list:
    """Reference enumerator: every a in [0, bound]^s with V . a = target."""
    V = _as_matrix(V)
    s = len(V[0])
    target = tuple(target)
    out = []
    for a in itertools.product(range(bound + 1), repeat=s):
        if tuple(sum(r * x for r, x in zip(row, a)) for row in V) == target:
            out.append(a)
    out.sort(reverse=True)
    return out


# ---------------------------------------------------------------------------
# semigroups


@dataclass(frozen=True)
class SemigroupSpec:
    """H generated by ``h_generators`` inside N V, with V the grading matrix."""

    grading: Grading
    h_generators: tuple

    def __post_init__(self):
        if not isinstance(self.grading, Grading):
            object.__setattr__(self, "grading", Grading(self.grading))
        gens = tuple(tuple(int(x) for x in h) for h in self.h_generators)
        d = self.grading.rank_space
        for h in gens:
            if len(h) != d:
                raise ValueError(f"H generator {h} has wrong length (expected {d})")
        object.__setattr__(self, "h_generators", gens)

    def distinct_degrees(self) -> list:
        return linalg.distinct_columns(self.grading.matrix)

    def is_case2(self) -> bool:
        return linalg.columns_independent(self.distinct_degrees())

    def coordinates(self, v: Sequence[int]) -> tuple | None:
        """Coordinates of v in the basis of distinct degree columns (case 2), or None."""
        basis = self.distinct_degrees()
        d = self.grading.rank_space
        x = linalg.solve([[c[i] for c in basis] for i in range(d)], list(v))
        if x is None or any(c.denominator != 1 for c in x):
            return None
        return tuple(int(c) for c in x)

    def contains(self, v: Sequence[int]) -> bool:
        """Membership of v in H (case 2: a bounded knapsack in class coordinates)."""
        if not self.is_case2():
            raise UnsupportedSemigroup("membership is implemented only for case (2)")
        target = self.coordinates(v)
        if target is None or any(c < 0 for c in target):
            return False
        gens = []
        for h in self.h_generators:
            c = self.coordinates(h)
            if c is None or any(x < 0 for x in c):
                raise UnsupportedSemigroup(f"H generator {h} is not in N V")
            if any(c):
                gens.append(c)
        return _knapsack(target, gens)


def _knapsack(target: tuple, gens: list) -> bool:
    seen: dict = {}

    def rec(i, rem):
        if not any(rem):
            return True
        if i == len(gens):
            return False
        k = (i, rem)
        if k in seen:
            return seen[k]
        g = gens[i]
        bound = min((r // x for r, x in zip(rem, g) if x > 0), default=0)
        ok = False
        for m in range(bound, -1, -1):
            if rec(i + 1, tuple(r - m * x for r, x in zip(rem, g))):
                ok = True
                break
        seen[k] = ok
        return ok

    return rec(0, tuple(target))


def semigroup_generators(spec: SemigroupSpec) -> list:
    """The union of the fibers of V over the generators of H (sorted, deduplicated).

    Generates {a in N^s : V . a in H} when the distinct columns of V are
    linearly independent.
    """
    if not spec.is_case2():
        raise UnsupportedSemigroup("distinct columns of the grading matrix are not linearly independent")
    out = set()
    for h in spec.h_generators:
        f = fiber(spec.grading, h)
        if not f:
            raise EmptyFiber(f"H generator {h} is not in N V")
        out.update(a for a in f if any(a))
    return sorted(out, reverse=True)


def decompose(a: Sequence[int], generators: Sequence[Sequence[int]]) -> list | None:
    """Write a as a sum of generators (with repetition) by backtracking, or None."""
    gens = [tuple(g) for g in generators if any(g)]
    a = tuple(a)
    memo: dict = {}

    def rec(rem):
        if not any(rem):
            return []
        if rem in memo:
            return memo[rem]
        res = None
        for g in gens:
            if all(x <= y for x, y in zip(g, rem)):
                sub = rec(tuple(y - x for x, y in zip(g, rem)))
                if sub is not None:
                    res = [g] + sub
                    break
        memo[rem] = res
        return res

    return rec(a)


# ---------------------------------------------------------------------------
# configurations and products


def is_configuration(amap: MonomialMap) -> tuple | None:
    """Some rational lam with lam . a_i = 1 for every column, or None."""
    cols = amap.columns()
    return _one_functional(cols)


def _one_functional(cols):
    sol = linalg.solve([list(c) for c in cols], [1] * len(cols))
    return tuple(sol) if sol is not None else None


def matrix_product_config(B: MonomialMap, A: MonomialMap) -> MonomialMap:
    """The map with matrix B . A, recording classes of equal columns (0-based)."""
    if B.cols != A.rows:
        raise ValueError(f"cannot multiply {B.rows}x{B.cols} by {A.rows}x{A.cols}")
    if not A.is_nonnegative():
        raise ValueError("the right factor must be non-negative")
    prod = tuple(
        tuple(sum(B.matrix[i][k] * A.matrix[k][j] for k in range(B.cols)) for j in range(A.cols))
        for i in range(B.rows)
    )
    cols = [tuple(prod[i][j] for i in range(len(prod))) for j in range(A.cols)]
    classes: dict = {}
    for j, c in enumerate(cols):
        classes.setdefault(c, []).append(j)
    dup = tuple(tuple(v) for v in classes.values() if len(v) > 1)
    return MonomialMap(prod, A.source, dup)
