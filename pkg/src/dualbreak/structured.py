"""The two structured matrix families: ``M_{x,y}`` and orbit-indexed ``A``.

``M_{x,y}`` is the n x n matrix with ``x`` on the diagonal and ``y``
elsewhere.  ``A`` is indexed by the orbit representatives of a frame and has
entries ``a(u . v)`` for an H-invariant ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import ExactMatrix, SingularMatrixError
from .orbits import OrbitFrame
from .weights import InvariantFn, WeightError, WeightFn, _as_invariant, correlations, is_nondegenerate

__all__ = [
    "SimpleStructured",
    "simple_det",
    "simple_inverse",
    "build_A",
    "product_blocks",
    "BlockSummary",
    "StructureViolation",
    "invert_A",
]


class StructureViolation(AssertionError):
    pass


@dataclass(frozen=True)
class SimpleStructured:
    n: int
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("size must be positive")
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def expand(self) -> ExactMatrix:
        n, x, y = self.n, self.x, self.y
        return ExactMatrix([[x if i == j else y for j in range(n)] for i in range(n)])


def simple_det(M: SimpleStructured) -> Fraction:
    """``(x - y)^(n-1) (x + (n-1) y)``."""
    return (M.x - M.y) ** (M.n - 1) * (M.x + (M.n - 1) * M.y)


def simple_inverse(M: SimpleStructured) -> SimpleStructured:
    n, x, y = M.n, M.x, M.y
    if simple_det(M) == 0:
        raise SingularMatrixError(f"M_{{{x},{y}}} of size {n} is singular")
    if n == 1:
        return SimpleStructured(1, 1 / x, 0)
    # x z + (n-1) y w = 1,  y z + (x + (n-2) y) w = 0
    d = x * (x + (n - 2) * y) - (n - 1) * y * y
    z = (x + (n - 2) * y) / d
    w = -y / d
    return SimpleStructured(n, z, w)


# ---------------------------------------------------------------- orbit matrices

def _coerce(frame: OrbitFrame, a) -> InvariantFn:
    if isinstance(a, (InvariantFn, WeightFn)):
        f = _as_invariant(a)
        if f.field != frame.field:
            raise WeightError("function and frame live on different fields")
        if f.t == frame.t:
            return f
        if frame.t % f.t == 0:
            # invariant under a larger group, hence under frame.H as well
            return InvariantFn(frame.field, frame.t, f.zero, tuple(f.at_power(j) for j in range(frame.t)))
        raise WeightError(f"function is not invariant under H = <alpha^{frame.t}>")
    return InvariantFn.from_table(frame.field, frame.t, list(a))


def build_A(frame: OrbitFrame, a) -> ExactMatrix:
    """The tau x tau matrix ``a(u . v)`` over the representatives, in frame order."""
    f = _coerce(frame, a)
    F = frame.field
    t = frame.t
    vecs = frame.rep_vectors()
    logs = [None] + [F.log(r) % t for r in range(1, F.q)]
    vals = [f.zero] + [f.cosets[logs[r]] for r in range(1, F.q)]
    rows = [[vals[frame.dot(u, v)] for v in vecs] for u in vecs]
    return ExactMatrix(rows, block=frame, source=f)


@dataclass(frozen=True)
class BlockSummary:
    diagonal: ExactMatrix
    off_diagonal: Fraction
    product: ExactMatrix


def product_blocks(A: ExactMatrix, B: ExactMatrix) -> BlockSummary:
    """Check the closed forms for the blocks of ``A @ B``.

    Diagonal t x t blocks have entry ``t a0 b0 + q c_{j-i}(a, b)``; every other
    entry is ``a0 b_breve + a_breve b0 + ((q-1)/t) a_breve b_breve``.
    """
    frame = A.block
    if frame is None or B.block is None or frame != B.block:
        raise WeightError("both matrices must be built on the same frame")
    a, b = A.source, B.source
    F = frame.field
    q, t = F.q, frame.t
    diag = ExactMatrix([[t * a.zero * b.zero + q * correlations(a, b, j - i) for j in range(t)] for i in range(t)])
    off = a.zero * b.breve + a.breve * b.zero + Fraction(q - 1, t) * a.breve * b.breve
    P = A @ B
    for r in range(P.nrows):
        for c in range(P.ncols):
            same = r // t == c // t
            want = diag[r % t, c % t] if same else off
            if P[r, c] != want:
                raise StructureViolation(f"entry ({r},{c}) is {P[r, c]}, closed form gives {want}")
    return BlockSummary(diag, off, P)


def invert_A(frame: OrbitFrame, a, method: str = "structured") -> tuple[InvariantFn, ExactMatrix]:
    """Inverse of ``A`` for an H-invariant ``a`` with ``a(0) = 0``.

    The structured method solves for the H-invariant ``b`` with
    ``c_0(b, a) = 1/q``, ``c_m(b, a) = 0`` for ``0 < m < t`` and
    ``b(0) = -((q-1)/t) * b_breve``; ``method="elimination"`` inverts the
    full matrix instead.  Either way ``B @ A == I`` is checked exactly.
    """
    f = _coerce(frame, a)
    if f.zero != 0:
        raise WeightError("invert_A needs a(0) = 0")
    F = frame.field
    q, t = F.q, frame.t
    nd = is_nondegenerate(f)
    if not nd.nondegenerate:
        raise SingularMatrixError("the circulant of a is singular, so A is not invertible")
    A = build_A(frame, f)
    if method == "structured":
        # c_m(b, a) = sum_j b(alpha^j) a(alpha^(m+j)): the circulant times b
        circ = ExactMatrix([[f.at_power(m + j) for j in range(t)] for m in range(t)])
        rhs = [Fraction(1, q)] + [Fraction(0)] * (t - 1)
        cos = circ.solve(rhs)
        b0 = -Fraction(q - 1, t) * sum(cos, Fraction(0))
        b = InvariantFn(F, t, b0, tuple(cos))
        B = build_A(frame, b)
    elif method == "elimination":
        B = A.inverse()
        b = InvariantFn.from_table(F, t, _table_from_matrix(frame, B))
        B = ExactMatrix(B.rows, block=frame, source=b)
    else:
        raise ValueError(f"unknown method {method!r}")
    if B @ A != ExactMatrix.identity(frame.tau):
        raise StructureViolation("B @ A is not the identity")
    return b, B


def _table_from_matrix(frame: OrbitFrame, B: ExactMatrix) -> list[Fraction]:
    """Read ``b(r)`` off an orbit matrix by locating a pair of reps with ``u . v = r``."""
    F = frame.field
    vecs = frame.rep_vectors()
    table: list[Fraction | None] = [None] * F.q
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            r = frame.dot(u, v)
            if table[r] is None:
                table[r] = B[i, j]
            elif table[r] != B[i, j]:
                raise StructureViolation("inverse is not of orbit type")
    if any(x is None for x in table):  # pragma: no cover
        raise StructureViolation("some field values never occur as u . v")
    return table
