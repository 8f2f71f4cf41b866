"""Constructors for Veronese configurations, toric fiber products, nested
configurations, and the worked flagship example shipped as fixture data."""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from . import linalg
from .contraction import ContractionProblem, ContractionReport, contract_initial
from .groebner import GroebnerBasis, Ideal, MonomialIdeal, buchberger, weight_from_order
from .ring import Grading, MonomialOrder, Polynomial, Ring, TermOrder
from .toric import MonomialMap, SemigroupSpec, fiber, is_configuration, matrix_product_config, toric_ideal


class NoOrderFound(RuntimeError):
    """No candidate order gave the required initial ideal (contradicts the cited result)."""


class FixtureError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# order search


def candidate_orders(n: int) -> list:
    """Orders tried, in this sequence, when a witness is searched."""
    nat, rev = tuple(range(n)), tuple(reversed(range(n)))
    return [TermOrder.lex(n, nat), TermOrder.degrevlex(n, nat), TermOrder.lex(n, rev), TermOrder.degrevlex(n, rev)]


def find_order(amap: MonomialMap, candidates: Sequence[MonomialOrder], max_degree: int = 2,
               squarefree: bool = True) -> tuple:
    """First candidate whose in(P_A) has degree <= max_degree (and is square-free).

    Returns (order, reduced Groebner basis).
    """
    for order in candidates:
        gb = toric_ideal(amap, order)
        ii = gb.initial_ideal()
        if ii.delta <= max_degree and (ii.is_squarefree or not squarefree):
            return order, gb
    raise NoOrderFound(f"none of {len(candidates)} candidate orders works for {amap.matrix}")


# ---------------------------------------------------------------------------
# Veronese


@dataclass(frozen=True)
class VeroneseResult:
    amap: MonomialMap
    order: TermOrder
    groebner: GroebnerBasis


def veronese_columns(s: int, d: int) -> list:
    """All a in N^s with |a| = d, sorted descending lexicographically."""
    return sorted((a for a in itertools.product(range(d + 1), repeat=s) if sum(a) == d), reverse=True)


def veronese(s: int, d: int) -> VeroneseResult:
    """The Veronese configuration with a lex witness for a square-free quadratic in(P_A)."""
    if s < 1 or d < 1:
        raise ValueError("s and d must be positive")
    amap = MonomialMap.from_columns(veronese_columns(s, d))
    n = amap.cols
    lex_only = [o for o in candidate_orders(n) if o.kind == "lex"]
    order, gb = find_order(amap, lex_only)
    return VeroneseResult(amap, order, gb)


# ---------------------------------------------------------------------------
# toric fiber products


@dataclass(frozen=True)
class FiberProductInstance:
    s: tuple
    t: tuple
    I1: tuple = ()
    I2: tuple = ()
    w1: tuple | None = None
    w2: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))
        if len(self.s) != len(self.t) or not self.s:
            raise ValueError("s and t must be non-empty and of equal length")
        if any(x < 1 for x in self.s + self.t):
            raise ValueError("block sizes must be positive")

    @property
    def d(self) -> int:
        return len(self.s)

    @classmethod
    def from_json(cls, doc: dict) -> "FiberProductInstance":
        return cls(tuple(doc["s"]), tuple(doc["t"]), tuple(doc.get("I1", ())), tuple(doc.get("I2", ())),
                   tuple(doc["w1"]) if doc.get("w1") is not None else None,
                   tuple(doc["w2"]) if doc.get("w2") is not None else None)

    def rings(self) -> tuple:
        d = self.d
        S1 = Ring(tuple(f"y{i + 1}_{j + 1}" for i in range(d) for j in range(self.s[i])))
        S2 = Ring(tuple(f"z{i + 1}_{k + 1}" for i in range(d) for k in range(self.t[i])))
        R = Ring(tuple(f"x{i + 1}_{j + 1}_{k + 1}" for i in range(d)
                       for j in range(self.s[i]) for k in range(self.t[i])))
        return S1, S2, R


@dataclass(frozen=True)
class FiberProductResult:
    instance: FiberProductInstance
    amap: MonomialMap
    order: TermOrder
    kernel: GroebnerBasis
    problem: ContractionProblem
    G1: GroebnerBasis
    G2: GroebnerBasis


def fiber_product_order(inst: FiberProductInstance) -> TermOrder:
    """Lex with x_{i1 j1 k1} < x_{i2 j2 k2} iff i1 < i2, or i equal and j1 < j2,
    or i, j equal and k1 > k2."""
    idx = [(i, j, k) for i in range(inst.d) for j in range(inst.s[i]) for k in range(inst.t[i])]
    priority = sorted(range(len(idx)), key=lambda n: (-idx[n][0], -idx[n][1], idx[n][2]))
    return TermOrder.lex(len(idx), priority)


def fiber_product_kernel(inst: FiberProductInstance, R: Ring, order: TermOrder) -> GroebnerBasis:
    """Closed form: the 2x2 minors x_{j1k2} x_{j2k1} - x_{j1k1} x_{j2k2} of every block."""
    pos = {}
    for n, name in enumerate(R.names):
        i, j, k = (int(p) - 1 for p in name[1:].split("_"))
        pos[(i, j, k)] = n
    elems = []
    for i in range(inst.d):
        for j1, j2 in itertools.combinations(range(inst.s[i]), 2):
            for k1, k2 in itertools.combinations(range(inst.t[i]), 2):
                lead = [0] * R.num_vars
                tail = [0] * R.num_vars
                lead[pos[(i, j1, k2)]] += 1
                lead[pos[(i, j2, k1)]] += 1
                tail[pos[(i, j1, k1)]] += 1
                tail[pos[(i, j2, k2)]] += 1
                elems.append(R.binomial(lead, tail))
    elems.sort(key=lambda g: order.key(order.leading(g)), reverse=True)
    return GroebnerBasis(R, tuple(elems), order, True)


def fiber_product(inst: FiberProductInstance, verify: bool = True) -> FiberProductResult:
    """Map x^{(i)}_{jk} -> y^{(i)}_j z^{(i)}_k, its kernel basis, and the contraction problem for I1 + I2."""
    S1, S2, R = inst.rings()
    S = Ring(S1.names + S2.names)
    d = inst.d
    n1 = S1.num_vars
    ystart = [sum(inst.s[:i]) for i in range(d)]
    zstart = [n1 + sum(inst.t[:i]) for i in range(d)]
    cols = []
    for i in range(d):
        for j in range(inst.s[i]):
            for k in range(inst.t[i]):
                c = [0] * S.num_vars
                c[ystart[i] + j] = 1
                c[zstart[i] + k] = 1
                cols.append(c)
    amap = MonomialMap.from_columns(cols, R)
    order = fiber_product_order(inst)
    kernel = fiber_product_kernel(inst, R, order)
    if verify:
        computed = toric_ideal(amap, order)
        if computed.formatted() != kernel.formatted():
            raise AssertionError(f"closed-form kernel {kernel.formatted()} != {computed.formatted()}")
    grading_rows = []
    for i in range(d):
        grading_rows.append([1 if (ystart[i] <= n < ystart[i] + inst.s[i]) else 0 for n in range(S.num_vars)])
    for i in range(d):
        grading_rows.append([1 if (zstart[i] <= n < zstart[i] + inst.t[i]) else 0 for n in range(S.num_vars)])
    grading = Grading(grading_rows)
    H = SemigroupSpec(grading, tuple(tuple(int(r == i or r == d + i) for r in range(2 * d)) for i in range(d)))
    I1 = Ideal.parse(S1, inst.I1)
    I2 = Ideal.parse(S2, inst.I2)
    G1, w1 = _basis_and_weight(I1, inst.w1)
    G2, w2 = _basis_and_weight(I2, inst.w2)
    gens = [_embed(g, S, 0) for g in G1.elements] + [_embed(g, S, n1) for g in G2.elements]
    problem = ContractionProblem(amap, grading, H, Ideal(S, tuple(gens)), w1 + w2, order)
    return FiberProductResult(inst, amap, order, kernel, problem, G1, G2)


def _basis_and_weight(I: Ideal, w):
    """A basis of I whose w-initial forms are its initial terms, and that w."""
    if w is None:
        gb = buchberger(I, TermOrder.degrevlex(I.ring.num_vars))
        return gb, weight_from_order(gb)
    w = tuple(int(x) for x in w)
    return buchberger(I, TermOrder.degrevlex(I.ring.num_vars).refine(w)), w


def _embed(f: Polynomial, S: Ring, offset: int) -> Polynomial:
    n = S.num_vars
    out = {}
    for e, c in f.terms.items():
        full = [0] * n
        full[offset:offset + len(e)] = e
        out[tuple(full)] = c
    return Polynomial(S, out)


# ---------------------------------------------------------------------------
# nested configurations


@dataclass(frozen=True)
class NestedInstance:
    """A (d x m, columns in N^d), blocks B_1..B_d in Z^mu, optional V and w_i."""

    A: tuple
    blocks: tuple
    V: tuple | None = None
    w: tuple | None = None

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        blocks = tuple(tuple(tuple(int(x) for x in b) for b in blk) for blk in self.blocks)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "blocks", blocks)
        if len(A) != len(blocks):
            raise ValueError(f"A has {len(A)} rows but {len(blocks)} blocks were given")
        if any(x < 0 for row in A for x in row):
            raise ValueError("A must be non-negative")
        if any(not blk for blk in blocks):
            raise ValueError("every block needs at least one vector")
        mu = {len(b) for blk in blocks for b in blk}
        if len(mu) != 1:
            raise ValueError("block vectors have different lengths")
        if is_configuration(MonomialMap(A)) is None:
            raise ValueError("A is not a configuration")
        if self.V is not None:
            V = tuple(tuple(int(x) for x in row) for row in self.V)
            object.__setattr__(self, "V", V)
            if self.w is None:
                raise ValueError("V given without the vectors w_i")
            w = tuple(tuple(int(x) for x in wi) for wi in self.w)
            object.__setattr__(self, "w", w)
            if len(w) != len(blocks):
                raise ValueError("need one w_i per block")
            if linalg.rank(w) != len(w):
                raise ValueError("the vectors w_i are not linearly independent")
            for i, blk in enumerate(blocks):
                for b in blk:
                    vb = tuple(sum(r * x for r, x in zip(row, b)) for row in V)
                    if vb != w[i]:
                        raise ValueError(f"V . {b} = {vb} differs from w_{i + 1} = {w[i]}")

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def sizes(self) -> tuple:
        return tuple(len(blk) for blk in self.blocks)

    @classmethod
    def from_json(cls, doc: dict) -> "NestedInstance":
        return cls(doc["A"], doc["blocks"], doc.get("V"), doc.get("w"))


@dataclass(frozen=True)
class NestedResult:
    A_tilde: MonomialMap
    B: MonomialMap
    product: MonomialMap
    grading: Grading

    def to_json(self) -> dict:
        return {
            "A_tilde": [list(r) for r in self.A_tilde.matrix],
            "B": [list(r) for r in self.B.matrix],
            "product": [list(r) for r in self.product.matrix],
            "duplicate_classes": [list(c) for c in self.product.duplicate_classes],
        }


def nested_config(inst: NestedInstance) -> NestedResult:
    """A~ (exponents on y^{(i)}_j of degree a column of A) and the product B . A~."""
    sizes = inst.sizes
    d = inst.d
    S = Ring(tuple(f"y{n + 1}" for n in range(sum(sizes))))
    starts = [sum(sizes[:i]) for i in range(d)]
    grading = Grading([[1 if starts[i] <= n < starts[i] + sizes[i] else 0 for n in range(S.num_vars)]
                       for i in range(d)])
    cols: list = []
    seen = set()
    for col in MonomialMap(inst.A).columns():
        for a in fiber(grading, col):
            if a not in seen:
                seen.add(a)
                cols.append(a)
    R = Ring.numbered("x", len(cols))
    A_tilde = MonomialMap.from_columns(cols, R)
    B = MonomialMap.from_columns([b for blk in inst.blocks for b in blk], S)
    product = matrix_product_config(B, A_tilde)
    return NestedResult(A_tilde, B, product, grading)


# ---------------------------------------------------------------------------
# the flagship example


def load_flagship(path: str | None = None) -> dict:
    """The fixture payload, after checking its checksum."""
    if path is None:
        text = resources.files("toriccontract").joinpath("data/flagship.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    doc = json.loads(text)
    payload = doc["payload"]
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canon.encode()).hexdigest()
    if digest != doc["sha256"]:
        raise FixtureError(f"flagship fixture checksum mismatch: {digest} != {doc['sha256']}")
    return payload


@dataclass
class FlagshipReport:
    checks: list = field(default_factory=list)
    witness: str = ""
    contraction: ContractionReport | None = None

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
            "witness_order": self.witness,
            "contraction": self.contraction.to_json() if self.contraction else None,
        }

    def table(self) -> str:
        width = max(len(n) for n, _, _ in self.checks)
        lines = [f"{n.ljust(width)}  {'PASS' if ok else 'FAIL'}  {d}" for n, ok, d in self.checks]
        lines.append(f"{'witness order'.ljust(width)}  {self.witness}")
        return "\n".join(lines)


def flagship_nested_instance(data: dict | None = None) -> NestedInstance:
    data = data or load_flagship()
    prods = data["products"]
    blocks = [[prods[f"y{j}"] for j in group] for group in data["manufacturer_products"]]
    V = [[ing[p] for ing in data["ingredients"]] for p in range(3)]
    patterns = data["pairing_patterns"]
    A = [[p[i] for p in patterns] for i in range(len(patterns[0]))]
    return NestedInstance(A, blocks, V, data["manufacturer_property_vectors"])


def flagship_problem(data: dict | None = None, order: MonomialOrder | None = None) -> tuple:
    """(ContractionProblem for (A~, P_B), lex basis of P_B, witness order, basis of P_A~)."""
    data = data or load_flagship()
    nested = nested_config(flagship_nested_instance(data))
    S = nested.B.source
    G_B = toric_ideal(nested.B, TermOrder.lex(S.num_vars))
    w = weight_from_order(G_B)
    n = nested.A_tilde.cols
    if order is None:
        order, G_At = find_order(nested.A_tilde, candidate_orders(n))
    else:
        G_At = toric_ideal(nested.A_tilde, order)
    H = SemigroupSpec(nested.grading, tuple(tuple(p) for p in data["pairing_patterns"]))
    problem = ContractionProblem(nested.A_tilde, nested.grading, H, G_B.ideal(), w, order)
    return problem, G_B, order, G_At


def flagship_example() -> FlagshipReport:
    data = load_flagship()
    rep = FlagshipReport()
    At = data["A_tilde"]
    B = data["B"]
    c0 = data["c0"]
    sold = tuple(sum(a * c for a, c in zip(row, c0)) for row in At)
    rep.add("sold products A~ c0", list(sold) == data["sold_products"], str(sold))
    tally = tuple(sum(b * x for b, x in zip(row, sold)) for row in B)
    rep.add("ingredient tally B (A~ c0)", list(tally) == data["ingredient_tally"], str(tally))

    inst = flagship_nested_instance(data)
    nested = nested_config(inst)
    rep.add("nested A~ matches fixture", [list(r) for r in nested.A_tilde.matrix] == At, "")
    rep.add("B . A~ matches fixture", [list(r) for r in nested.product.matrix] == data["B_A_tilde"],
            f"duplicate classes (0-based) {[list(c) for c in nested.product.duplicate_classes]}")

    S = Ring.numbered("y", 7)
    G_B = toric_ideal(MonomialMap(B, S), TermOrder.lex(7))
    expected = buchberger(Ideal.parse(S, data["P_B_lex"]), TermOrder.lex(7))
    rep.add("lex basis of P_B", G_B.formatted() == expected.formatted() and len(G_B) == 6,
            "; ".join(G_B.formatted()))

    R = Ring.numbered("x", 16)
    G_BA = toric_ideal(MonomialMap(data["B_A_tilde"], R))
    fixture33 = [R.parse(t) for t in data["P_BA_generators"]]
    fwd = all(G_BA.contains(f) for f in fixture33)
    back_gb = buchberger(Ideal(R, tuple(fixture33)), G_BA.order)
    back = all(back_gb.contains(g) for g in G_BA.elements)
    rep.add("33 binomials generate P_{B.A~}", fwd and back and len(fixture33) == 33,
            f"{len(G_BA)} elements in the reduced basis")

    problem, _, order, _ = flagship_problem(data)
    rep.witness = order.spec_string(problem.source)
    report = contract_initial(problem)
    rep.contraction = report
    rep.add("square-free quadratic initial ideal", report.squarefree and report.delta == 2,
            f"delta={report.delta} squarefree={report.squarefree} inputs={report.bound_inputs}")
    same = report.groebner.formatted() == toric_ideal(MonomialMap(data["B_A_tilde"], R), report.groebner.order).formatted()
    rep.add("contraction equals P_{B.A~}", same, "")
    return rep
