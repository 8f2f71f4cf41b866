"""Pure-Python reduction kernel.

A "term list" is a list of ``(key, exp, coeff)`` triples sorted by ``key``
descending, with no zero coefficients.  ``key`` is the order key of ``exp``
(see ``ring.MonomialOrder``).  The Cython module ``_kernel_c`` implements the
same functions with the same semantics.
"""
from __future__ import annotations

IMPLEMENTATION = "python"


def order_key(rows, exp):
    return tuple([sum([c * exp[i] for i, c in row]) for row in rows])


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def find_divisor(exp, leads):
    """Index of the first exponent in ``leads`` dividing ``exp``, or -1."""
    for idx, lead in enumerate(leads):
        for x, y in zip(lead, exp):
            if x > y:
                break
        else:
            return idx
    return -1


def exp_add(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def exp_sub(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def exp_lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def sub_scaled(f, c, shift_exp, shift_key, g):
    """Return ``f - c * x^shift * g`` as a new term list."""
    out = []
    i = 0
    nf = len(f)
    for gk, ge, gc in g:
        k = tuple([x + y for x, y in zip(gk, shift_key)])
        v = -c * gc
        while i < nf and f[i][0] > k:
            out.append(f[i])
            i += 1
        if i < nf and f[i][0] == k:
            s = f[i][2] + v
            if s:
                out.append((k, f[i][1], s))
            i += 1
        else:
            out.append((k, tuple([x + y for x, y in zip(ge, shift_exp)]), v))
    out.extend(f[i:])
    return out


def normal_form(f, basis, leads, full=True):
    """Remainder of term list ``f`` on division by ``basis``.

    ``basis`` is a list of term lists, ``leads`` their leading exponents.
    Divisors are tried in list order; the leading term is reduced first.
    With ``full=False`` only the leading term is reduced (top reduction).
    """
    rem = []
    p = f
    while p:
        k, e, c = p[0]
        idx = find_divisor(e, leads)
        if idx < 0:
            if not full:
                return p
            rem.append(p[0])
            p = p[1:]
            continue
        g = basis[idx]
        gk, ge, gc = g[0]
        shift_exp = tuple([x - y for x, y in zip(e, ge)])
        shift_key = tuple([x - y for x, y in zip(k, gk)])
        p = sub_scaled(p[1:], c / gc, shift_exp, shift_key, g[1:])
    return rem
