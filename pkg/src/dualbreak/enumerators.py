"""Symmetrized enumerators and their MacWilliams transforms.

Classes of field elements are ``P_0 = {0}`` and ``P_j = alpha^j H`` for
``j = 1..t`` (so ``P_t = H``).  The Kravchuk matrix has entries
``K_{i,j} = sum_{s in P_j} zeta^{tr(alpha^i s)}`` for ``i >= 1`` and
``K_{0,j} = |P_j|``.

Internally every Kravchuk entry is kept as an element of the group ring
``Z[x]/(x^p - 1)`` (a nonnegative integer vector of length ``p``), which
maps onto ``Z[zeta]`` by ``x -> zeta``.  Substituting those linear forms
into an enumerator therefore only ever adds nonnegative integers, which
gives a clean bound for the multi-modular kernels.  A group-ring element
is rational in ``Q(zeta)`` exactly when its coordinates ``1..p-1`` agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .cyclotomic import CyclotomicNumber
from .finite_field import FiniteField, trace
from .kernels import dual_class_histogram, expand_exact
from .orbits import OrbitFrame
from .polys import SparsePoly
from .weights import WeightFn

__all__ = [
    "MacWilliamsError",
    "CapExceeded",
    "generating_character",
    "class_of",
    "KravchukMatrix",
    "kravchuk",
    "symmetrized_enumerator",
    "code_symmetrized_enumerator",
    "macwilliams_transform",
    "dual_wwe",
    "specialize_to_wwe",
    "class_weights",
    "hamming_macwilliams",
    "hamming_enumerator",
    "parity_check_matrix",
    "brute_force_dual",
    "brute_force_dual_se",
    "DEFAULT_CAP",
    "f9_maps",
    "is_hamming_isometry",
    "trace_expansion_holds",
    "kravchuk_as_matrix",
]

DEFAULT_CAP = 10**7
_ZFORM_CELL_LIMIT = 4_000_000


class MacWilliamsError(ArithmeticError):
    """A transformed coefficient was not a nonnegative rational integer."""


class CapExceeded(ValueError):
    pass


# ---------------------------------------------------------------- characters

def generating_character(F: FiniteField) -> Callable[[int], CyclotomicNumber]:
    """``r -> zeta_p^{tr(r)}``."""

    def chi(r: int) -> CyclotomicNumber:
        return CyclotomicNumber.zeta_power(F.p, trace(F, r))

    return chi


def class_of(F: FiniteField, t: int, r: int) -> int:
    if r == 0:
        return 0
    return (F.log(r) - 1) % t + 1


def _class_table(F: FiniteField, t: int) -> list[int]:
    return [class_of(F, t, r) for r in range(F.q)]


@dataclass(frozen=True)
class KravchukMatrix:
    field: FiniteField
    t: int
    group_ring: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return self.t + 1

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return CyclotomicNumber.from_group_ring(self.p, self.group_ring[i][j])

    def entries(self) -> list[list[CyclotomicNumber]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def class_sizes(self) -> list[int]:
        return [sum(self.group_ring[0][j]) for j in range(self.size)]


def kravchuk(frame_or_field, t: int | None = None, *, representative_shift: int = 0) -> KravchukMatrix:
    """Kravchuk matrix for ``H = <alpha^t>``.

    ``representative_shift`` replaces ``alpha^i`` by ``alpha^(i + k t)`` in the
    rows; the result must not change, which tests use as a consistency check.
    """
    if isinstance(frame_or_field, OrbitFrame):
        F, t = frame_or_field.field, frame_or_field.t
    else:
        F = frame_or_field
        if t is None:
            raise ValueError("t is required when passing a field")
    p, q = F.p, F.q
    classes = _class_table(F, t)
    members = [[r for r in range(q) if classes[r] == j] for j in range(t + 1)]
    tr = [trace(F, r) for r in range(q)]
    rows = []
    row0 = []
    for j in range(t + 1):
        v = [0] * p
        v[0] = len(members[j])
        row0.append(tuple(v))
    rows.append(tuple(row0))
    for i in range(1, t + 1):
        a = F.alpha_pow(i + representative_shift * t)
        row = []
        for j in range(t + 1):
            v = [0] * p
            for s in members[j]:
                v[tr[F.mul(a, s)]] += 1
            row.append(tuple(v))
        rows.append(tuple(row))
    return KravchukMatrix(F, t, tuple(rows))


# ---------------------------------------------------------------- enumerators

def symmetrized_enumerator(frame: OrbitFrame, eta: Sequence[int]) -> SparsePoly:
    """``se_C`` for the 2-dimensional code whose columns are ``eta``-many copies
    of each representative, computed message by message (``q^2`` of them)."""
    if len(eta) != frame.tau:
        raise ValueError(f"eta has {len(eta)} entries, frame has {frame.tau} representatives")
    if any(int(e) != e or e < 0 for e in eta):
        raise ValueError("eta must be a nonnegative integer vector")
    F = frame.field
    t = frame.t
    classes = _class_table(F, t)
    used = [(r.vector, int(e)) for r, e in zip(frame.reps, eta) if e]
    acc: Counter = Counter()
    for v0 in range(F.q):
        for v1 in range(F.q):
            e = [0] * (t + 1)
            for (x0, x1), m in used:
                e[classes[F.add(F.mul(v0, x0), F.mul(v1, x1))]] += m
            acc[tuple(e)] += 1
    return SparsePoly(t + 1, acc)


def code_symmetrized_enumerator(F: FiniteField, t: int, G: Sequence[Sequence[int]]) -> SparsePoly:
    """``se_C`` of the row space of ``G`` by enumerating all ``q^k`` messages.

    Rows are assumed linearly independent; a dependent ``G`` overcounts.
    """
    from itertools import product

    k = len(G)
    n = len(G[0]) if k else 0
    classes = _class_table(F, t)
    acc: Counter = Counter()
    for msg in product(range(F.q), repeat=k):
        word = [0] * n
        for a, row in zip(msg, G):
            if a:
                word = [F.add(x, F.mul(a, y)) for x, y in zip(word, row)]
        e = [0] * (t + 1)
        for x in word:
            e[classes[x]] += 1
        acc[tuple(e)] += 1
    return SparsePoly(t + 1, acc)


def class_weights(w: WeightFn) -> list[int]:
    """Exponent of ``y`` substituted for each ``Z_j``: ``w(alpha^j)``, with 0 for ``Z_0``."""
    F = w.field
    t = w.t
    vals = [w(F.alpha_pow(j)) for j in range(1, t + 1)]
    if any(v.denominator != 1 for v in vals):
        raise ValueError("specialization needs an integer-valued weight")
    return [0] + [int(v) for v in vals]


def specialize_to_wwe(se: SparsePoly, w: WeightFn | Sequence[int]) -> SparsePoly:
    """``Z_0 <- 1``, ``Z_j <- y^{w(alpha^j)}``."""
    shifts = class_weights(w) if isinstance(w, WeightFn) else list(w)
    if len(shifts) != se.nvars:
        raise ValueError("one weight per enumerator variable is required")
    return se.specialize(shifts)


def _integer_terms(se: SparsePoly) -> list[tuple[int, list[int]]]:
    terms = []
    for e, c in se.items():
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("enumerator coefficients must be integers")
            c = int(c)
        if not isinstance(c, int) or c < 0:
            raise ValueError("enumerator coefficients must be nonnegative integers")
        terms.append((c, list(e)))
    return terms


def _pull_back(flat: list[int], p: int, size_C: int, slot: int) -> int:
    a = flat[slot * p:(slot + 1) * p]
    if p > 2 and any(x != a[1] for x in a[2:]):
        raise MacWilliamsError(f"coefficient at slot {slot} is irrational: group-ring vector {a}")
    value = a[0] - a[1]
    if value % size_C:
        raise MacWilliamsError(f"coefficient {value}/{size_C} at slot {slot} is not an integer")
    value //= size_C
    if value < 0:
        raise MacWilliamsError(f"coefficient {value} at slot {slot} is negative")
    return value


def _degree(se: SparsePoly) -> int:
    degs = se.degrees()
    if len(degs) != 1:
        raise ValueError("enumerator must be homogeneous")
    return degs.pop()


def macwilliams_transform(se: SparsePoly, K: KravchukMatrix, size_C: int, backend: str | None = None) -> SparsePoly:
    """Full symmetrized enumerator of the dual code.

    ``Z_j`` is packed as ``y^{(n+1)^(j-1)}`` for ``j >= 1`` and ``Z_0`` as 1;
    each product has total degree ``n`` so the packing is faithful.
    """
    t = K.t
    if se.nvars != t + 1:
        raise ValueError(f"enumerator has {se.nvars} variables, Kravchuk matrix needs {t + 1}")
    n = _degree(se)
    if n == 0:
        raise ValueError("zero-length code")
    p, q = K.p, K.field.q
    base = n + 1
    cells = base**t
    if cells * p > _ZFORM_CELL_LIMIT:
        raise ValueError(f"full transform needs {cells} cells; use dual_wwe for the univariate route")
    shifts = [0] + [base ** (j - 1) for j in range(1, t + 1)]
    forms = [_form(K.group_ring[i], shifts) for i in range(t + 1)]
    terms = _integer_terms(se)
    bound = sum(c for c, _ in terms) * q**n
    flat = expand_exact(terms, forms, p, cells, bound, backend)
    out = {}
    for slot in range(cells):
        if any(flat[slot * p:(slot + 1) * p]):
            val = _pull_back(flat, p, size_C, slot)
            if val:
                e, d = [], slot
                for _ in range(t):
                    e.append(d % base)
                    d //= base
                e0 = n - sum(e)
                if e0 < 0:
                    raise MacWilliamsError(f"term of degree above {n} at slot {slot}")
                out[tuple([e0] + e)] = val
    result = SparsePoly(t + 1, out)
    if sum(out.values()) * size_C != q**n:
        raise MacWilliamsError("dual coefficients do not sum to q^n / |C|")
    return result


def _form(row, shifts) -> list[tuple[int, tuple[int, ...]]]:
    merged: dict[int, list[int]] = {}
    for vec, s in zip(row, shifts):
        if not any(vec):
            continue
        acc = merged.setdefault(s, [0] * len(vec))
        for k, v in enumerate(vec):
            acc[k] += v
    return sorted((s, tuple(v)) for s, v in merged.items())


def _truncated_bound(forms, n: int, size: int) -> int:
    """Largest coefficient sum of ``M(y)^n`` below ``y^size``, where ``M``
    dominates every form; each group-ring entry of a truncated product is
    at most this."""
    m = [0] * size
    for form in forms:
        for s, vec in form:
            if s < size:
                m[s] = max(m[s], sum(vec))

    def mul(a, b):
        c = [0] * size
        for i, x in enumerate(a):
            if x:
                for j in range(size - i):
                    if b[j]:
                        c[i + j] += x * b[j]
        return c

    acc = [1] + [0] * (size - 1)
    while n:
        if n & 1:
            acc = mul(acc, m)
        m = mul(m, m)
        n >>= 1
    return max(acc)


def dual_wwe(
    se: SparsePoly,
    K: KravchukMatrix,
    size_C: int,
    weights: Sequence[int],
    max_degree: int | None = None,
    backend: str | None = None,
) -> dict[int, int]:
    """Weight enumerator of the dual, ``{weight: count}``, via the univariate route.

    The specialization ``Z_j <- y^{weights[j]}`` is applied to the linear
    forms before expanding, so only ``n * max(weights) + 1`` coefficients
    are ever stored; ``max_degree`` truncates further and still gives exact
    low-order coefficients.
    """
    t = K.t
    if se.nvars != t + 1 or len(weights) != t + 1:
        raise ValueError("need one weight per class and a (t+1)-variable enumerator")
    if weights[0] != 0 or any(w <= 0 for w in weights[1:]):
        raise ValueError("class weights must be 0 for Z_0 and positive otherwise")
    n = _degree(se)
    p, q = K.p, K.field.q
    full = n * max(weights) + 1
    size = full if max_degree is None else min(full, max_degree + 1)
    forms = [_form(K.group_ring[i], weights) for i in range(t + 1)]
    terms = _integer_terms(se)
    total = sum(c for c, _ in terms)
    bound = total * (q**n if size == full else _truncated_bound(forms, n, size))
    flat = expand_exact(terms, forms, p, size, bound, backend)
    out = {}
    for d in range(size):
        if any(flat[d * p:(d + 1) * p]):
            v = _pull_back(flat, p, size_C, d)
            if v:
                out[d] = v
    if size == full and sum(out.values()) * size_C != q**n:
        raise MacWilliamsError("dual coefficients do not sum to q^n / |C|")
    return out


# ---------------------------------------------------------------- Hamming

def hamming_enumerator(F: FiniteField, G: Sequence[Sequence[int]]) -> SparsePoly:
    """``hwe_C(X, Y) = sum_c X^{n - wt(c)} Y^{wt(c)}``."""
    se = code_symmetrized_enumerator(F, 1, G)
    return SparsePoly(2, {e: c for e, c in se.items()})


def hamming_macwilliams(hwe: SparsePoly, q: int, size_C: int) -> SparsePoly:
    """``(1/|C|) hwe_C(X + (q-1) Y, X - Y)``."""
    if hwe.nvars != 2:
        raise ValueError("Hamming enumerator has two variables")
    n = _degree(hwe)
    out: Counter = Counter()
    for (a, b), c in hwe.items():
        # (X + (q-1)Y)^a (X - Y)^b
        for i in range(a + 1):
            ci = comb(a, i) * (q - 1) ** i
            for j in range(b + 1):
                out[(n - i - j, i + j)] += c * ci * comb(b, j) * (-1) ** j
    res = {}
    for e, v in out.items():
        if v % size_C:
            raise MacWilliamsError(f"coefficient {v}/{size_C} is not an integer")
        if v:
            if v < 0:
                raise MacWilliamsError(f"negative coefficient {v // size_C}")
            res[e] = v // size_C
    return SparsePoly(2, res)


# ---------------------------------------------------------------- brute force

def _rref(F: FiniteField, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    M = [list(r) for r in rows]
    n = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = F.neg(M[i][c])
                M[i] = [F.add(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def parity_check_matrix(F: FiniteField, G: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows spanning the dual of the row space of ``G``."""
    R, piv = _rref(F, G)
    n = len(G[0])
    free = [c for c in range(n) if c not in piv]
    H = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        H.append(v)
    return H


def _dual_histogram(F: FiniteField, G, t: int, cap: int, backend: str | None):
    n = len(G[0])
    # dimension first: the parity-check matrix itself can be enormous
    r = n - len(_rref(F, G)[1])
    if F.q**r > cap:
        raise CapExceeded(f"dual has {F.q}^{r} words, above the cap {cap}")
    H = parity_check_matrix(F, G)
    q = F.q
    scaled = [F.mul(a, H[row][col]) for row in range(r) for a in range(q) for col in range(n)]
    hist = dual_class_histogram(scaled, F.add_table(), _class_table(F, t), r, n, q, t, backend=backend)
    return n, hist


def brute_force_dual_se(F: FiniteField, G, t: int, cap: int = DEFAULT_CAP, backend: str | None = None) -> SparsePoly:
    n, hist = _dual_histogram(F, G, t, cap, backend)
    return SparsePoly(t + 1, {(n - sum(k),) + tuple(k): c for k, c in hist.items()})


def brute_force_dual(F: FiniteField, G, weight: WeightFn, cap: int = DEFAULT_CAP, backend: str | None = None) -> dict[int, int]:
    """Weight distribution of the dual by enumerating every dual codeword."""
    t = weight.t
    ws = class_weights(weight)
    n, hist = _dual_histogram(F, G, t, cap, backend)
    out: Counter = Counter()
    for k, c in hist.items():
        out[sum(a * b for a, b in zip(k, ws[1:]))] += c
    return dict(sorted(out.items()))


# ---------------------------------------------------------------- F_9 tables

def f9_maps(F: FiniteField) -> tuple[dict[int, tuple[int, int]], dict[int, tuple[int, int]]]:
    """``f(x + y a) = (x + y, x)`` and ``g(x + y a) = (y, x - y)`` over F_3."""
    if (F.p, F.l) != (3, 2):
        raise ValueError("these maps are defined on F_9")
    f, g = {}, {}
    for r in range(F.q):
        x, y = F.coeffs(r)
        f[r] = ((x + y) % 3, x % 3)
        g[r] = (y % 3, (x - y) % 3)
    return f, g


def is_hamming_isometry(F: FiniteField, table: dict[int, tuple[int, ...]], w: WeightFn) -> bool:
    """Additive bijection onto F_p^l that carries ``w`` to the Hamming weight."""
    if len(set(table.values())) != F.q:
        return False
    p = F.p
    for a in range(F.q):
        for b in range(F.q):
            s = tuple((u + v) % p for u, v in zip(table[a], table[b]))
            if table[F.add(a, b)] != s:
                return False
    return all(sum(1 for c in table[r] if c) == w(r) for r in range(F.q))


def trace_expansion_holds(F: FiniteField) -> bool:
    """``tr(v v') = 2 x x' + x y' + y x'`` and its two rewritings, for all pairs."""
    if (F.p, F.l) != (3, 2):
        raise ValueError("the identity is stated on F_9")
    for v in range(F.q):
        x, y = F.coeffs(v)
        for v2 in range(F.q):
            x2, y2 = F.coeffs(v2)
            lhs = trace(F, F.mul(v, v2))
            if lhs != (2 * x * x2 + x * y2 + y * x2) % 3:
                return False
            if lhs != ((x + y) * x2 + x * (x2 + y2)) % 3:
                return False
            if lhs != (y * y2 - (x - y) * (x2 - y2)) % 3:
                return False
    return True


def kravchuk_as_matrix(K: KravchukMatrix) -> list[list[str]]:
    """String form of each entry, for reports."""
    return [[str(K.entry(i, j)) for j in range(K.size)] for i in range(K.size)]
