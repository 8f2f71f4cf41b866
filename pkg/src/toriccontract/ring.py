"""Exact multivariate polynomials, multigradings and term orders.

Monomials are plain tuples of non-negative ints.  Every term order is
compiled to a short list of sparse integer rows; the order key of a monomial
is the tuple of row products, compared lexicographically.  Keys are linear
(``key(a + b) == key(a) + key(b)``), which the reduction kernel relies on.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernel

Exponent = tuple  # tuple[int, ...]
SparseRow = tuple  # tuple[tuple[int, int], ...]  (index, coefficient)

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class RingMismatch(ValueError):
    pass


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over Q in the given ordered variables."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")

    @classmethod
    def numbered(cls, prefix: str, n: int) -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} in ring {self.names}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: 1})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.num_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.num_vars)]

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        exp = tuple(exp)
        check_exponent(self, exp)
        return Polynomial(self, {exp: coeff})

    def binomial(self, a: Sequence[int], b: Sequence[int]) -> "Polynomial":
        """x^a - x^b."""
        a, b = tuple(a), tuple(b)
        check_exponent(self, a)
        check_exponent(self, b)
        return Polynomial(self, {a: 1, b: -1} if a != b else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __str__(self):
        return "QQ[" + ",".join(self.names) + "]"


def check_exponent(ring: Ring, exp: Exponent) -> None:
    if len(exp) != ring.num_vars:
        raise RingMismatch(f"exponent {exp} has length {len(exp)}, ring has {ring.num_vars} variables")
    if any(e < 0 for e in exp):
        raise ValueError(f"negative exponent in {exp}")


def total_degree(exp: Exponent) -> int:
    return sum(exp)


def is_squarefree(exp: Exponent) -> bool:
    return all(e <= 1 for e in exp)


# ---------------------------------------------------------------------------
# term orders


class MonomialOrder:
    """Base class: a term order given by integer rows (a matrix order).

    Subclasses fill ``rows`` and ``num_vars``.  ``key`` maps an exponent
    tuple to the tuple of row products; bigger key means bigger monomial.
    """

    rows: tuple
    num_vars: int

    def key(self, exp: Exponent) -> tuple:
        return kernel.order_key(self.rows, exp)

    def compare(self, m1: Exponent, m2: Exponent) -> Ordering:
        if len(m1) != self.num_vars or len(m2) != self.num_vars:
            raise RingMismatch(f"order on {self.num_vars} variables cannot compare {m1} and {m2}")
        k1, k2 = self.key(m1), self.key(m2)
        if k1 == k2:
            # rows of a term order have full rank, so equal keys mean equal monomials
            return Ordering.EQUAL
        return Ordering.GREATER if k1 > k2 else Ordering.LESS

    def leading(self, poly: "Polynomial") -> Exponent:
        if not poly.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(poly.terms, key=self.key)

    def sort_desc(self, exps: Iterable[Exponent]) -> list:
        return sorted(exps, key=self.key, reverse=True)

    def refine(self, weight: Sequence[int]) -> "MonomialOrder":
        """The order that compares by ``weight`` first and breaks ties with self."""
        return WeightedOrder(tuple(weight), self)


@dataclass(frozen=True, eq=False)
class TermOrder(MonomialOrder):
    """Lex or degrevlex on an explicit variable priority, optionally weight-refined.

    ``priority`` lists variable indices from largest to smallest, so
    ``TermOrder("lex", (2, 1, 0))`` is lex with x3 > x2 > x1.
    """

    kind: str
    priority: tuple
    weight: tuple | None = None

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        pr = tuple(int(i) for i in self.priority)
        if sorted(pr) != list(range(len(pr))):
            raise ValueError(f"variable priority {pr} is not a permutation")
        object.__setattr__(self, "priority", pr)
        n = len(pr)
        if self.weight is not None:
            w = tuple(int(x) for x in self.weight)
            if len(w) != n:
                raise RingMismatch(f"weight {w} has wrong length for {n} variables")
            if any(x < 0 for x in w):
                raise ValueError(f"weight {w} has negative entries")
            object.__setattr__(self, "weight", w)
        object.__setattr__(self, "num_vars", n)
        object.__setattr__(self, "rows", _term_order_rows(kind, pr, self.weight))

    def __eq__(self, other):
        return (isinstance(other, TermOrder) and self.kind == other.kind
                and self.priority == other.priority and self.weight == other.weight)

    def __hash__(self):
        return hash((self.kind, self.priority, self.weight))

    @classmethod
    def lex(cls, n: int, priority: Sequence[int] | None = None) -> "TermOrder":
        return cls("lex", tuple(priority) if priority is not None else tuple(range(n)))

    @classmethod
    def degrevlex(cls, n: int, priority: Sequence[int] | None = None) -> "TermOrder":
        return cls("degrevlex", tuple(priority) if priority is not None else tuple(range(n)))

    def refine(self, weight: Sequence[int]) -> "TermOrder":
        if self.weight is not None:
            return super().refine(weight)
        return TermOrder(self.kind, self.priority, tuple(weight))

    def without_weight(self) -> "TermOrder":
        return TermOrder(self.kind, self.priority)

    def spec_string(self, ring: Ring) -> str:
        s = self.kind + ":" + ",".join(ring.names[i] for i in self.priority)
        if self.weight is not None:
            s += "@" + ",".join(map(str, self.weight))
        return s

    @classmethod
    def parse(cls, text: str, ring: Ring) -> "TermOrder":
        """Parse ``lex:x3,x2,x1`` / ``degrevlex:...``, optional ``@w1,w2,...`` suffix."""
        text = text.strip()
        weight = None
        if "@" in text:
            text, wtxt = text.split("@", 1)
            weight = tuple(int(x) for x in wtxt.split(","))
        if ":" not in text:
            raise ValueError(f"order {text!r} must spell out the variable priority, e.g. lex:x1,x2")
        kind, names = text.split(":", 1)
        names = [n.strip() for n in names.split(",") if n.strip()]
        if sorted(names) != sorted(ring.names):
            raise ValueError(f"order priority {names} is not a permutation of {list(ring.names)}")
        return cls(kind, tuple(ring.index(n) for n in names), weight)

    def __repr__(self):
        w = f", weight={self.weight}" if self.weight is not None else ""
        return f"TermOrder({self.kind!r}, {self.priority}{w})"


def _term_order_rows(kind: str, priority: tuple, weight: tuple | None) -> tuple:
    rows = []
    if weight is not None:
        rows.append(tuple((i, w) for i, w in enumerate(weight) if w))
    if kind == "lex":
        rows.extend(((i, 1),) for i in priority)
    else:
        rows.append(tuple((i, 1) for i in range(len(priority))))
        # ties: the smallest variable with differing exponent decides, bigger exponent loses
        rows.extend(((i, -1),) for i in reversed(priority[1:]))
    return tuple(rows)


class WeightedOrder(MonomialOrder):
    """``base`` refined by a weight vector: weight first, ``base`` as tie-breaker."""

    def __init__(self, weight: tuple, base: MonomialOrder):
        if len(weight) != base.num_vars:
            raise RingMismatch(f"weight {weight} has wrong length for {base.num_vars} variables")
        if any(x < 0 for x in weight):
            raise ValueError(f"weight {weight} has negative entries")
        self.weight = tuple(int(x) for x in weight)
        self.base = base
        self.num_vars = base.num_vars
        self.rows = (tuple((i, w) for i, w in enumerate(self.weight) if w),) + base.rows

    def __eq__(self, other):
        return isinstance(other, WeightedOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"WeightedOrder({self.weight}, {self.base!r})"


class MatrixOrder(MonomialOrder):
    """A term order given directly by its integer rows (dense lists)."""

    def __init__(self, matrix: Sequence[Sequence[int]]):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.num_vars = len(matrix[0])
        self.matrix = matrix
        self.rows = tuple(tuple((i, c) for i, c in enumerate(row) if c) for row in matrix)

    def __eq__(self, other):
        return isinstance(other, MatrixOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MatrixOrder({self.matrix})"


class BlockOrder(MonomialOrder):
    """Elimination order: degrevlex on ``first`` variables, ties broken by ``rest_order``.

    ``rest_order`` is an order on the remaining variables (in their relative
    order), so any monomial involving a ``first`` variable beats every
    monomial free of them.
    """

    def __init__(self, num_vars: int, first: Sequence[int], rest_order: MonomialOrder):
        first = tuple(first)
        rest = tuple(i for i in range(num_vars) if i not in set(first))
        if rest_order.num_vars != len(rest):
            raise RingMismatch("rest order has the wrong number of variables")
        self.num_vars = num_vars
        self.first = first
        self.rest = rest
        self.rest_order = rest_order
        rows = [tuple((i, 1) for i in first)]
        rows.extend(((i, -1),) for i in reversed(first[1:]))
        for row in rest_order.rows:
            rows.append(tuple((rest[i], c) for i, c in row))
        self.rows = tuple(r for r in rows if r)

    def __repr__(self):
        return f"BlockOrder({self.num_vars}, first={self.first}, rest={self.rest_order!r})"


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class Grading:
    """Z^d-grading of a polynomial ring: column i of ``matrix`` is deg(y_i)."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not m or not m[0]:
            raise ValueError("grading matrix must be non-empty")
        if len({len(r) for r in m}) != 1:
            raise ValueError("grading matrix rows have unequal length")
        object.__setattr__(self, "matrix", m)

    @property
    def rank_space(self) -> int:
        return len(self.matrix)

    @property
    def num_vars(self) -> int:
        return len(self.matrix[0])

    def column(self, i: int) -> tuple:
        return tuple(row[i] for row in self.matrix)

    def multidegree(self, exp: Sequence[int]) -> tuple:
        if len(exp) != self.num_vars:
            raise RingMismatch(f"exponent of length {len(exp)} against grading on {self.num_vars} variables")
        return tuple(sum(r * e for r, e in zip(row, exp)) for row in self.matrix)

    def degree(self, poly: "Polynomial") -> tuple | None:
        """Common multidegree of all terms, or None if ``poly`` is zero or not homogeneous."""
        degs = {self.multidegree(e) for e in poly.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, poly: "Polynomial") -> bool:
        return poly.is_zero() or self.degree(poly) is not None


def multidegree(grading: Grading, exp: Sequence[int]) -> tuple:
    return grading.multidegree(exp)


# ---------------------------------------------------------------------------
# polynomials

# fixed internal order used for canonical term storage and printing
def _canonical_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping):
        clean = {}
        for exp, c in terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        self.ring = ring
        self.terms = {e: clean[e] for e in sorted(clean, key=_canonical_key, reverse=True)}
        self._hash = None

    @classmethod
    def _trusted(cls, ring: Ring, terms: dict) -> "Polynomial":
        # terms already cleaned (Fraction, nonzero); only sorting is needed
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = {e: terms[e] for e in sorted(terms, key=_canonical_key, reverse=True)}
        p._hash = None
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list:
        return list(self.terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {(0,) * self.ring.num_vars: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._trusted(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._trusted(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial._trusted(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._trusted(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        c = Fraction(coeff)
        return Polynomial._trusted(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()} if c else {})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def leading_term(self, order: MonomialOrder) -> Exponent:
        return order.leading(self)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[order.leading(self)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading_coefficient(order))

    def format(self, order: MonomialOrder | None = None) -> str:
        """Text form; terms in descending ``order`` (canonical order if omitted)."""
        return format_polynomial(self, order)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# text grammar

def format_monomial(ring: Ring, exp: Exponent) -> str:
    parts = []
    for name, e in zip(ring.names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(poly: Polynomial, order: MonomialOrder | None = None) -> str:
    if poly.is_zero():
        return "0"
    exps = order.sort_desc(poly.terms) if order is not None else list(poly.terms)
    out = []
    for k, e in enumerate(exps):
        c = poly.terms[e]
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(poly.ring, e)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = _format_coeff(a) + "*" + mono
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)(?:/(\d+))?|([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?|([+\-*]))")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the text grammar, e.g. ``x1^2*x3 - 2/3*x2``."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial text")
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        pos = m.end()
        if m.group(1) is not None:
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise ValueError(f"zero denominator in {text!r}")
            tokens.append(("num", Fraction(num, den)))
        elif m.group(3) is not None:
            tokens.append(("var", (ring.index(m.group(3)), int(m.group(4) or 1))))
        elif m.group(5) is not None:
            tokens.append(("op", m.group(5)))
        else:  # trailing whitespace
            break

    terms: dict = {}
    i = 0
    n = ring.num_vars
    expect_term = True
    sign = 1
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-" and expect_term:
            sign = -sign if val == "-" else sign
            i += 1
            continue
        if not expect_term:
            if kind != "op" or val not in "+-":
                raise ValueError(f"expected + or - in {text!r}")
            expect_term = True
            sign = 1
            continue
        coeff = Fraction(sign)
        exp = [0] * n
        need_factor = True
        seen = False
        while i < len(tokens) and need_factor:
            kind, val = tokens[i]
            if kind == "num":
                coeff *= val
            elif kind == "var":
                exp[val[0]] += val[1]
            else:
                raise ValueError(f"unexpected {val!r} in {text!r}")
            seen = True
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
                need_factor = True
                if i >= len(tokens):
                    raise ValueError(f"dangling * in {text!r}")
            else:
                need_factor = False
        if not seen:
            raise ValueError(f"missing term in {text!r}")
        e = tuple(exp)
        s = terms.get(e, 0) + coeff
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
        expect_term = False
    if expect_term:
        raise ValueError(f"polynomial {text!r} ends with an operator")
    return Polynomial(ring, terms)
