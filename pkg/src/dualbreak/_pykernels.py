"""Pure-Python reference versions of the hot loops in ``_kernels.pyx``.

Both modules expose the same two functions with identical signatures; the
compiled one works modulo a prime below 2^62, this one additionally accepts
``modulus == 0`` for exact integer arithmetic.
"""

from __future__ import annotations

EXACT = True


def _mul_form(acc, top, form, p, modulus, size):
    new = [0] * (size * p)
    for d in range(top + 1):
        base = d * p
        row = acc[base:base + p]
        nz = [(k, a) for k, a in enumerate(row) if a]
        if not nz:
            continue
        for shift, vec in form:
            nd = d + shift
            if nd >= size:
                continue
            nb = nd * p
            for k, a in nz:
                for k2, v in vec:
                    idx = nb + (k + k2) % p
                    new[idx] += a * v
    if modulus:
        new = [x % modulus for x in new]
    grow = max(s for s, _ in form)
    return new, min(size - 1, top + grow)


def use_squaring(e, nterms, size):
    """Binary powering costs about ``(2 log e + 1) size^2 p^2`` against
    ``e nterms size p^2`` for repeated multiplication by a form."""
    return e > 1 and (2 * e.bit_length() + 1) * size < e * nterms


def _dense(form, p, size):
    v = [0] * (size * p)
    for shift, vec in form:
        if shift < size:
            for k, x in vec:
                v[shift * p + k] += x
    return v


def _mul_dense(a, b, p, modulus, size):
    out = [0] * (size * p)
    for d1 in range(size):
        ra = [(k, x) for k, x in enumerate(a[d1 * p:(d1 + 1) * p]) if x]
        if not ra:
            continue
        for d2 in range(size - d1):
            rb = [(k, x) for k, x in enumerate(b[d2 * p:(d2 + 1) * p]) if x]
            base = (d1 + d2) * p
            for k1, x in ra:
                for k2, y in rb:
                    out[base + (k1 + k2) % p] += x * y
    if modulus:
        out = [x % modulus for x in out]
    return out


def _power(form, e, p, modulus, size):
    base = _dense(form, p, size)
    acc = [0] * (size * p)
    acc[0] = 1
    while e:
        if e & 1:
            acc = _mul_dense(acc, base, p, modulus, size)
        e >>= 1
        if e:
            base = _mul_dense(base, base, p, modulus, size)
    return acc


def expand_forms(terms, forms, p, modulus, size):
    """Sum of ``coef * prod_i forms[i]^exps[i]`` truncated below ``y^size``.

    A form is a list of ``(shift, vec)`` pairs meaning ``sum y^shift * g(vec)``
    where ``g(vec) = sum_k vec[k] x^k`` lives in ``Z[x]/(x^p - 1)``.  The
    result is a flat list; entry ``d*p + k`` is the coefficient of
    ``y^d x^k``.
    """
    sparse_forms = [[(s, [(k, v) for k, v in enumerate(vec) if v]) for s, vec in f] for f in forms]
    out = [0] * (size * p)
    powers: dict = {}
    for coef, exps in terms:
        acc = [0] * (size * p)
        acc[0] = 1
        top = 0
        for i, (form, e) in enumerate(zip(sparse_forms, exps)):
            if use_squaring(e, len(form), size):
                if (i, e) not in powers:
                    powers[(i, e)] = _power(form, e, p, modulus, size)
                acc = _mul_dense(acc, powers[(i, e)], p, modulus, size)
                top = size - 1
                continue
            for _ in range(e):
                acc, top = _mul_form(acc, top, form, p, modulus, size)
        for i, x in enumerate(acc):
            if x:
                out[i] += coef * x
        if modulus:
            out = [x % modulus for x in out]
    return out


def dual_class_histogram(scaled, add, cls, r, n, q, t):
    """Histogram of class-count vectors over all ``q^r`` combinations of rows.

    ``scaled[(row*q + a)*n + col]`` is ``a * rows[row][col]`` as a field code,
    ``add`` the flat addition table and ``cls[x]`` the class of element ``x``.
    Keys are tuples ``(count of class 1, ..., count of class t)``.
    """
    hist: dict = {}

    def rec(level, vec):
        if level == r:
            counts = [0] * (t + 1)
            for x in vec:
                counts[cls[x]] += 1
            key = tuple(counts[1:])
            hist[key] = hist.get(key, 0) + 1
            return
        for a in range(q):
            off = (level * q + a) * n
            row = scaled[off:off + n]
            rec(level + 1, [add[x * q + y] for x, y in zip(vec, row)])

    rec(0, [0] * n)
    return hist
