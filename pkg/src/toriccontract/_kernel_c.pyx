# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython reduction kernel; same API and semantics as ``_kernel_py``."""

IMPLEMENTATION = "cython"


cpdef tuple order_key(tuple rows, tuple exp):
    cdef list out = []
    cdef tuple row, entry
    cdef object acc
    for row in rows:
        acc = 0
        for entry in row:
            acc += entry[1] * exp[<Py_ssize_t>entry[0]]
        out.append(acc)
    return tuple(out)


cpdef bint divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cpdef Py_ssize_t find_divisor(tuple exp, list leads):
    cdef Py_ssize_t idx, i, n = len(exp), m = len(leads)
    cdef tuple lead
    cdef bint ok
    for idx in range(m):
        lead = <tuple>leads[idx]
        ok = True
        for i in range(n):
            if <long>lead[i] > <long>exp[i]:
                ok = False
                break
        if ok:
            return idx
    return -1


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <long>a[i] + <long>b[i]
    return tuple(out)


cdef inline tuple _sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <long>a[i] - <long>b[i]
    return tuple(out)


# keys may exceed a C long (large weights), so they stay Python ints
cdef inline tuple _add_obj(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return tuple(out)


cdef inline tuple _sub_obj(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = a[i] - b[i]
    return tuple(out)


cpdef tuple exp_add(tuple a, tuple b):
    return _add(a, b)


cpdef tuple exp_sub(tuple a, tuple b):
    return _sub(a, b)


cpdef tuple exp_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    cdef long x, y
    for i in range(n):
        x = a[i]
        y = b[i]
        out[i] = x if x > y else y
    return tuple(out)


cdef int _cmp_key(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef object x, y
    for i in range(n):
        x = a[i]
        y = b[i]
        if x > y:
            return 1
        if x < y:
            return -1
    return 0


cpdef list sub_scaled(list f, object c, tuple shift_exp, tuple shift_key, list g):
    cdef list out = []
    cdef Py_ssize_t i = 0, nf = len(f)
    cdef tuple gt, ft, k
    cdef object v, s
    cdef int cmp
    for gt in g:
        k = _add_obj(<tuple>gt[0], shift_key)
        v = -c * gt[2]
        while i < nf:
            ft = <tuple>f[i]
            cmp = _cmp_key(<tuple>ft[0], k)
            if cmp > 0:
                out.append(ft)
                i += 1
            else:
                break
        if i < nf and _cmp_key(<tuple>(<tuple>f[i])[0], k) == 0:
            ft = <tuple>f[i]
            s = ft[2] + v
            if s:
                out.append((k, ft[1], s))
            i += 1
        else:
            out.append((k, _add(<tuple>gt[1], shift_exp), v))
    if i < nf:
        out.extend(f[i:])
    return out


cpdef list normal_form(list f, list basis, list leads, bint full=True):
    cdef list rem = []
    cdef list p = f
    cdef list g
    cdef tuple head, ghead
    cdef Py_ssize_t idx
    while p:
        head = <tuple>p[0]
        idx = find_divisor(<tuple>head[1], leads)
        if idx < 0:
            if not full:
                return p
            rem.append(head)
            p = p[1:]
            continue
        g = <list>basis[idx]
        ghead = <tuple>g[0]
        p = sub_scaled(p[1:], head[2] / ghead[2], _sub(<tuple>head[1], <tuple>ghead[1]),
                       _sub_obj(<tuple>head[0], <tuple>ghead[0]), g[1:])
    return rem
