# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops; see ``_pykernels`` for the reference semantics.

Arithmetic is modulo a prime below 2^62, so every residue fits in 62 bits
and a sum of two residues never overflows an unsigned 64-bit word.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy, memset

cdef extern from *:
    """
    static inline unsigned long long dualbreak_mulmod(unsigned long long a,
                                                      unsigned long long b,
                                                      unsigned long long m) {
        return (unsigned long long)(((unsigned __int128)a * b) % m);
    }
    """
    unsigned long long dualbreak_mulmod(unsigned long long a, unsigned long long b, unsigned long long m) nogil

ctypedef unsigned long long u64

from ._pykernels import use_squaring

EXACT = False
_DENSE_LIMIT = 1 << 24


cdef void _mul_form(u64* acc, u64* tmp, Py_ssize_t top, Py_ssize_t nt, Py_ssize_t* shifts,
                    u64* vecs, Py_ssize_t p, u64 m, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t d, tt, nd, nb, k, k2, kk, base
    cdef u64 a, v, x
    memset(tmp, 0, size * p * sizeof(u64))
    for d in range(top + 1):
        base = d * p
        for tt in range(nt):
            nd = d + shifts[tt]
            if nd >= size:
                continue
            nb = nd * p
            for k in range(p):
                a = acc[base + k]
                if a == 0:
                    continue
                for k2 in range(p):
                    v = vecs[tt * p + k2]
                    if v == 0:
                        continue
                    kk = k + k2
                    if kk >= p:
                        kk -= p
                    x = tmp[nb + kk] + dualbreak_mulmod(a, v, m)
                    if x >= m:
                        x -= m
                    tmp[nb + kk] = x


cdef void _mul_dense(u64* a, u64* b, u64* out, Py_ssize_t p, u64 m, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t d1, d2, k1, k2, kk, base
    cdef u64 x, y, z
    memset(out, 0, size * p * sizeof(u64))
    for d1 in range(size):
        for k1 in range(p):
            x = a[d1 * p + k1]
            if x == 0:
                continue
            for d2 in range(size - d1):
                base = (d1 + d2) * p
                for k2 in range(p):
                    y = b[d2 * p + k2]
                    if y == 0:
                        continue
                    kk = k1 + k2
                    if kk >= p:
                        kk -= p
                    z = out[base + kk] + dualbreak_mulmod(x, y, m)
                    if z >= m:
                        z -= m
                    out[base + kk] = z


cdef void _power_into(u64* acc, u64* tmp, u64* base, u64* sq, Py_ssize_t e, Py_ssize_t nt, Py_ssize_t* shifts,
                      u64* vecs, Py_ssize_t p, u64 m, Py_ssize_t size) noexcept nogil:
    # acc <- acc * form^e by binary powering; tmp, base, sq are scratch
    cdef Py_ssize_t tt, k, total = size * p
    memset(base, 0, total * sizeof(u64))
    for tt in range(nt):
        if shifts[tt] < size:
            for k in range(p):
                base[shifts[tt] * p + k] = (base[shifts[tt] * p + k] + vecs[tt * p + k]) % m
    while e:
        if e & 1:
            _mul_dense(acc, base, tmp, p, m, size)
            memcpy(acc, tmp, total * sizeof(u64))
        e >>= 1
        if e:
            _mul_dense(base, base, sq, p, m, size)
            memcpy(base, sq, total * sizeof(u64))


def expand_forms(terms, forms, Py_ssize_t p, u64 modulus, Py_ssize_t size):
    if modulus == 0:
        raise ValueError("the compiled kernel needs a prime modulus")
    if modulus >= (1ULL << 62):
        raise ValueError("modulus must be below 2^62")
    cdef Py_ssize_t nforms = len(forms)
    cdef Py_ssize_t total = size * p
    cdef Py_ssize_t i, j, k, e, top, grow, nt, off
    cdef u64 c, x
    cdef Py_ssize_t* counts = <Py_ssize_t*> malloc(nforms * sizeof(Py_ssize_t))
    cdef Py_ssize_t* starts = <Py_ssize_t*> malloc(nforms * sizeof(Py_ssize_t))
    cdef Py_ssize_t* maxshift = <Py_ssize_t*> malloc(nforms * sizeof(Py_ssize_t))
    cdef Py_ssize_t nall = sum(len(f) for f in forms)
    cdef Py_ssize_t* shifts = <Py_ssize_t*> malloc((nall + 1) * sizeof(Py_ssize_t))
    cdef u64* vecs = <u64*> calloc((nall + 1) * p, sizeof(u64))
    cdef u64* acc = <u64*> malloc(total * sizeof(u64))
    cdef u64* tmp = <u64*> malloc(total * sizeof(u64))
    cdef u64* out = <u64*> calloc(total, sizeof(u64))
    cdef u64* base = <u64*> malloc(total * sizeof(u64))
    cdef u64* sq = <u64*> malloc(total * sizeof(u64))
    cdef u64* swap
    cdef bint square
    if not (counts and starts and maxshift and shifts and vecs and acc and tmp and out and base and sq):
        raise MemoryError()
    try:
        off = 0
        for i in range(nforms):
            starts[i] = off
            counts[i] = len(forms[i])
            maxshift[i] = 0
            for shift, vec in forms[i]:
                shifts[off] = shift
                if shift > maxshift[i]:
                    maxshift[i] = shift
                for k in range(p):
                    vecs[off * p + k] = (<u64> (vec[k] % modulus))
                off += 1
        for coef, exps in terms:
            c = <u64> (coef % modulus)
            memset(acc, 0, total * sizeof(u64))
            acc[0] = 1
            top = 0
            for i in range(nforms):
                e = exps[i]
                nt = counts[i]
                grow = maxshift[i]
                square = use_squaring(e, nt, size)
                if square:
                    with nogil:
                        _power_into(acc, tmp, base, sq, e, nt, shifts + starts[i], vecs + starts[i] * p,
                                    p, modulus, size)
                    top = size - 1
                    continue
                with nogil:
                    for j in range(e):
                        _mul_form(acc, tmp, top, nt, shifts + starts[i], vecs + starts[i] * p, p, modulus, size)
                        swap = acc
                        acc = tmp
                        tmp = swap
                        top = top + grow
                        if top > size - 1:
                            top = size - 1
            with nogil:
                for k in range(total):
                    if acc[k]:
                        x = out[k] + dualbreak_mulmod(acc[k], c, modulus)
                        if x >= modulus:
                            x -= modulus
                        out[k] = x
        return [out[k] for k in range(total)]
    finally:
        free(counts)
        free(starts)
        free(maxshift)
        free(shifts)
        free(vecs)
        free(acc)
        free(tmp)
        free(out)
        free(base)
        free(sq)


def dual_class_histogram(scaled, add, cls, Py_ssize_t r, Py_ssize_t n, Py_ssize_t q, Py_ssize_t t):
    cdef Py_ssize_t buckets = 1
    cdef Py_ssize_t i
    for i in range(t):
        buckets *= n + 1
        if buckets > _DENSE_LIMIT or t > 63:
            from . import _pykernels
            return _pykernels.dual_class_histogram(scaled, add, cls, r, n, q, t)
    cdef long long* sc = <long long*> malloc((r * q * n + 1) * sizeof(long long))
    cdef long long* ad = <long long*> malloc(q * q * sizeof(long long))
    cdef long long* pack = <long long*> malloc(q * sizeof(long long))
    cdef long long* partial = <long long*> calloc((r + 1) * n + 1, sizeof(long long))
    cdef long long* digit = <long long*> calloc(r + 1, sizeof(long long))
    cdef unsigned long long* hist = <unsigned long long*> calloc(buckets, sizeof(unsigned long long))
    cdef long long key, col, lev, l, x
    cdef long long[64] powers
    if not (sc and ad and pack and partial and digit and hist):
        raise MemoryError()
    try:
        for i in range(r * q * n):
            sc[i] = scaled[i]
        for i in range(q * q):
            ad[i] = add[i]
        powers[0] = 0
        if t >= 1:
            powers[1] = 1
        for i in range(2, t + 1):
            powers[i] = powers[i - 1] * (n + 1)
        for i in range(q):
            pack[i] = powers[cls[i]]
        for lev in range(r):
            for col in range(n):
                partial[(lev + 1) * n + col] = ad[partial[lev * n + col] * q + sc[(lev * q) * n + col]]
        with nogil:
            while True:
                key = 0
                for col in range(n):
                    key += pack[partial[r * n + col]]
                hist[key] += 1
                l = r - 1
                while l >= 0:
                    digit[l] += 1
                    if digit[l] < q:
                        break
                    digit[l] = 0
                    l -= 1
                if l < 0:
                    break
                for lev in range(l, r):
                    for col in range(n):
                        x = partial[lev * n + col]
                        partial[(lev + 1) * n + col] = ad[x * q + sc[(lev * q + digit[lev]) * n + col]]
        out = {}
        for i in range(buckets):
            if hist[i]:
                key = i
                counts = []
                for _ in range(t):
                    counts.append(key % (n + 1))
                    key //= n + 1
                out[tuple(counts)] = hist[i]
        return out
    finally:
        free(sc)
        free(ad)
        free(pack)
        free(partial)
        free(digit)
        free(hist)
