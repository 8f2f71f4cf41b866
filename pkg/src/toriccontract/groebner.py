"""Normal forms, S-polynomials, Buchberger's algorithm and initial ideals."""
from __future__ import annotations

import heapq
from operator import add
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernel
from .ring import (
    MonomialOrder,
    Polynomial,
    Ring,
    RingMismatch,
    TermOrder,
    format_monomial,
    is_squarefree,
)


class NotInIdeal(ValueError):
    """A polynomial claimed to lie in an ideal does not."""


class WeightNotFound(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# containers


@dataclass(frozen=True)
class Ideal:
    """An ideal presented by generators; no generators means the zero ideal."""

    ring: Ring
    generators: tuple = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatch(f"generator {g} is not in {self.ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def is_zero(self) -> bool:
        return not self.generators

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators (an antichain)."""

    ring: Ring
    generators: tuple = ()

    def __post_init__(self):
        gens = minimalize(self.generators)
        object.__setattr__(self, "generators", tuple(sorted(gens, key=lambda e: (sum(e), e))))

    def __contains__(self, exp) -> bool:
        return kernel.find_divisor(tuple(exp), list(self.generators)) >= 0

    def contains(self, exp) -> bool:
        return tuple(exp) in self

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def delta(self) -> int:
        """Largest degree of a minimal generator (0 for the zero ideal)."""
        return max((sum(e) for e in self.generators), default=0)

    @property
    def is_squarefree(self) -> bool:
        return all(is_squarefree(e) for e in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.generators + other.generators)

    def polynomials(self) -> list:
        return [self.ring.monomial(e) for e in self.generators]

    def format(self) -> list:
        return [format_monomial(self.ring, e) or "1" for e in self.generators]


def minimalize(exps: Iterable) -> list:
    """Drop exponents divisible by another one (duplicates collapse)."""
    uniq = sorted(set(tuple(e) for e in exps), key=lambda e: (sum(e), e))
    out: list = []
    for e in uniq:
        if kernel.find_divisor(e, out) < 0:
            out.append(e)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    elements: tuple
    order: MonomialOrder
    reduced: bool = True
    initial_generators: tuple = field(default=())

    def __post_init__(self):
        if not self.initial_generators:
            object.__setattr__(self, "initial_generators",
                               tuple(self.order.leading(g) for g in self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, list(self.elements), self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.ring, self.initial_generators)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def formatted(self) -> list:
        return [g.format(self.order) for g in self.elements]

    def to_json(self) -> dict:
        return {
            "order": order_string(self.order, self.ring),
            "ring": list(self.ring.names),
            "elements": self.formatted(),
            "initial_generators": [list(e) for e in self.initial_generators],
        }


def order_string(order: MonomialOrder, ring: Ring) -> str:
    if isinstance(order, TermOrder):
        return order.spec_string(ring)
    return repr(order)


# ---------------------------------------------------------------------------
# term-list conversion

def to_terms(f: Polynomial, order: MonomialOrder) -> list:
    key = order.key
    return sorted(((key(e), e, c) for e, c in f.terms.items()), reverse=True)


def from_terms(ring: Ring, terms: list) -> Polynomial:
    return Polynomial._trusted(ring, {e: c for _, e, c in terms})


def _monic_terms(t: list) -> list:
    lc = t[0][2]
    if lc == 1:
        return t
    inv = 1 / lc
    return [(k, e, c * inv) for k, e, c in t]


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


# ---------------------------------------------------------------------------
# division and S-polynomials


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (divisors in list order, leading term first)."""
    basis = [to_terms(g, order) for g in G if not g.is_zero()]
    for g in G:
        if g.ring != f.ring:
            raise RingMismatch(f"{g} is not in {f.ring}")
    leads = [t[0][1] for t in basis]
    return from_terms(f.ring, kernel.normal_form(to_terms(f, order), basis, leads, True))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    return from_terms(f.ring, _spoly_terms(to_terms(f, order), to_terms(g, order), order.key))


def _spoly_terms(ft: list, gt: list, key) -> list:
    """(lcm/lt f) f / lc f - (lcm/lt g) g / lc g; the leading terms cancel."""
    fe, fc = ft[0][1], ft[0][2]
    ge, gc = gt[0][1], gt[0][2]
    lcm = kernel.exp_lcm(fe, ge)
    sf = kernel.exp_sub(lcm, fe)
    sg = kernel.exp_sub(lcm, ge)
    kf, kg = key(sf), key(sg)
    inv = 1 / fc
    left = [(tuple(map(add, k, kf)), kernel.exp_add(e, sf), c * inv) for k, e, c in ft[1:]]
    return kernel.sub_scaled(left, 1 / gc, sg, kg, gt[1:])


# ---------------------------------------------------------------------------
# Buchberger


def _gm_update(polys, active, h, alive):
    """Gebauer-Moeller update after adding polys[h]; mutates ``pairs``/``alive``."""
    lh = polys[h][0][1]
    cand = []
    for g in active:
        lg = polys[g][0][1]
        cand.append((g, kernel.exp_lcm(lh, lg), _coprime(lh, lg)))
    kept = []
    for idx, (g, lcm, cop) in enumerate(cand):
        if cop:
            kept.append((g, lcm, cop))
            continue
        # chain criterion among the new pairs: drop (h, g) if another new lcm divides it
        redundant = False
        for g2, lcm2, _ in cand[idx + 1:]:
            if kernel.divides(lcm2, lcm):
                redundant = True
                break
        if not redundant:
            for g2, lcm2, _ in kept:
                if kernel.divides(lcm2, lcm):
                    redundant = True
                    break
        if not redundant:
            kept.append((g, lcm, cop))
    # old pairs made redundant by lt(h)
    for pair in list(alive):
        i, j, lcm = pair
        if kernel.divides(lh, lcm):
            li, lj = polys[i][0][1], polys[j][0][1]
            if kernel.exp_lcm(li, lh) != lcm and kernel.exp_lcm(lj, lh) != lcm:
                alive.discard(pair)
    new_pairs = [(g, lcm) for g, lcm, cop in kept if not cop]
    new_active = [g for g in active if not kernel.divides(lh, polys[g][0][1])]
    new_active.append(h)
    return new_active, new_pairs


def _groebner_terms(gens: list, order: MonomialOrder) -> list:
    """Reduced Groebner basis (as monic term lists sorted by leading key desc)."""
    key = order.key
    polys: list = []
    active: list = []
    alive: set = set()
    heap: list = []
    counter = 0

    def add_poly(t):
        nonlocal active, counter
        polys.append(_monic_terms(t))
        h = len(polys) - 1
        active, new_pairs = _gm_update(polys, active, h, alive)
        for g, lcm in new_pairs:
            pair = (g, h, lcm)
            alive.add(pair)
            heapq.heappush(heap, (key(lcm), counter, pair))
            counter += 1

    for t in gens:
        r = kernel.normal_form(t, [polys[i] for i in active], [polys[i][0][1] for i in active], True)
        if r:
            add_poly(r)

    while heap:
        _, _, pair = heapq.heappop(heap)
        if pair not in alive:
            continue
        alive.discard(pair)
        i, j, _ = pair
        sp = _spoly_terms(polys[i], polys[j], key)
        if not sp:
            continue
        basis = [polys[a] for a in active]
        r = kernel.normal_form(sp, basis, [b[0][1] for b in basis], True)
        if r:
            add_poly(r)

    # interreduce: leads of ``active`` already form an antichain
    basis = [polys[a] for a in active]
    out = []
    for idx, t in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = kernel.normal_form(t[1:], others, [o[0][1] for o in others], True)
        out.append([t[0]] + tail)
    # reducedness of one element depends only on the others' leads, so one pass suffices
    final = out
    final.sort(key=lambda t: t[0][0], reverse=True)
    return final


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder, ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` with respect to ``order``."""
    if not isinstance(ideal, Ideal):
        gens = list(ideal)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an empty generator list")
            ring = gens[0].ring
        ideal = Ideal(ring, tuple(gens))
    ring = ideal.ring
    if order.num_vars != ring.num_vars:
        raise RingMismatch(f"order on {order.num_vars} variables used on {ring}")
    terms = _groebner_terms([to_terms(g, order) for g in ideal.generators], order)
    elements = tuple(from_terms(ring, t) for t in terms)
    return GroebnerBasis(ring, elements, order, True, tuple(t[0][1] for t in terms))


def groebner(gens: Sequence[Polynomial], order: MonomialOrder, ring: Ring | None = None) -> GroebnerBasis:
    return buchberger(gens, order, ring)


def is_groebner(F: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial of ``F`` reduces to zero modulo ``F``."""
    return not nonzero_s_remainders(F, order)


def nonzero_s_remainders(F: Sequence[Polynomial], order: MonomialOrder) -> list:
    """Nonzero remainders of S(f_i, f_j) on division by ``F``, as (i, j, remainder)."""
    F = [f for f in F if not f.is_zero()]
    if not F:
        return []
    ring = F[0].ring
    terms = [to_terms(f, order) for f in F]
    leads = [t[0][1] for t in terms]
    out = []
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            sp = _spoly_terms(terms[i], terms[j], order.key)
            r = kernel.normal_form(sp, terms, leads, True)
            if r:
                out.append((i, j, from_terms(ring, r)))
    return out


# ---------------------------------------------------------------------------
# initial forms and ideals


def weight_of(w: Sequence[int], exp: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(w, exp))


def initial_form(f: Polynomial, w: Sequence[int]) -> Polynomial:
    """Sum of the terms of ``f`` of highest ``w``-weight."""
    if len(w) != f.ring.num_vars:
        raise RingMismatch(f"weight {tuple(w)} on {f.ring}")
    if f.is_zero():
        return f
    top = max(weight_of(w, e) for e in f.terms)
    return Polynomial._trusted(f.ring, {e: c for e, c in f.terms.items() if weight_of(w, e) == top})


def initial_ideal(ideal: Ideal, order: MonomialOrder) -> MonomialIdeal:
    """Minimal generators of in_order(ideal), read off the reduced Groebner basis."""
    return buchberger(ideal, order).initial_ideal()


@dataclass(frozen=True)
class WeightInitialIdeal:
    """Generators of in_w(I); ``monomial`` tells whether they are all monomials."""

    ring: Ring
    generators: tuple
    monomial: bool
    groebner: GroebnerBasis

    def monomial_ideal(self) -> MonomialIdeal:
        if not self.monomial:
            raise ValueError("in_w(I) is not a monomial ideal")
        return MonomialIdeal(self.ring, tuple(next(iter(g.terms)) for g in self.generators))

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)


def initial_ideal_weight(ideal: Ideal, w: Sequence[int], tiebreak: MonomialOrder) -> WeightInitialIdeal:
    """in_w(I) as {in_w(g) : g in the reduced basis under tiebreak refined by w}."""
    gb = buchberger(ideal, tiebreak.refine(tuple(w)))
    gens = tuple(initial_form(g, w) for g in gb.elements)
    return WeightInitialIdeal(ideal.ring, gens, all(g.is_monomial() for g in gens), gb)


def weight_from_order(G: GroebnerBasis) -> tuple:
    """A positive integer weight w with in_w(g) = in_order(g) for every g in ``G``.

    Built from the order's integer rows: w = c_1 r_1 + ... + c_k r_k with the
    coefficients chosen from the last row upward so that every difference
    vector (leading exponent minus another exponent of the same element, and
    every unit vector) gets positive weight.
    """
    n = G.ring.num_vars
    if not G.elements:
        return (1,) * n
    diffs = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for g in G.elements:
        lead = G.order.leading(g)
        diffs.extend(tuple(a - b for a, b in zip(lead, e)) for e in g.terms if e != lead)
    rows = [[0] * n for _ in G.order.rows]
    for r, row in zip(rows, G.order.rows):
        for i, c in row:
            r[i] += c
    # level of a difference = first row with a nonzero product; it must be positive
    levels: dict = {}
    for d in diffs:
        for lvl, r in enumerate(rows):
            v = weight_of(r, d)
            if v:
                if v < 0:
                    raise WeightNotFound(f"difference {d} is negative under the order")
                levels.setdefault(lvl, []).append((d, v))
                break
        else:
            raise WeightNotFound(f"difference {d} is invisible to the order")
    # bottom-up: adding c * row_l keeps every deeper-level difference unchanged
    w = [0] * n
    for lvl in range(len(rows) - 1, -1, -1):
        if lvl not in levels:
            continue
        c = 1
        for d, v in levels[lvl]:
            c = max(c, (-weight_of(w, d)) // v + 1)
        w = [a + c * b for a, b in zip(w, rows[lvl])]
    w = tuple(w)
    for g in G.elements:
        if initial_form(g, w) != Polynomial._trusted(g.ring, {G.order.leading(g): g.terms[G.order.leading(g)]}):
            raise WeightNotFound(f"weight {w} does not pick the initial term of {g}")
    if any(x <= 0 for x in w):
        raise WeightNotFound(f"weight {w} is not positive")
    return w


def is_pseudo_groebner(F: Sequence[Polynomial], ideal: Ideal, w: Sequence[int], tiebreak: MonomialOrder) -> bool:
    """Whether <in_w(f) : f in F> = in_w(ideal).

    Raises ``NotInIdeal`` if some f is not in the ideal.
    """
    gb = buchberger(ideal, tiebreak)
    for f in F:
        if not gb.contains(f):
            raise NotInIdeal(f"{f} is not in the ideal")
    target = initial_ideal_weight(ideal, w, tiebreak)
    forms = [initial_form(f, w) for f in F if not f.is_zero()]
    if not forms:
        return not target.generators
    gb_forms = buchberger(Ideal(ideal.ring, tuple(forms)), tiebreak)
    if not all(gb_forms.contains(g) for g in target.generators):
        return False
    gb_target = buchberger(target.ideal(), tiebreak) if target.generators else None
    return all(gb_target is not None and gb_target.contains(g) for g in forms)
