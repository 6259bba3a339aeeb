"""Representatives of the nonzero H-orbits in F_q^2.

Lines are labelled ``INF, 0, 1, ..., q-1`` with generators
``l_inf = (0, 1)``, ``l_0 = (1, 0)`` and ``l_j = (1, alpha^j)``.  The
representative list runs block by block in that line order, and inside a
block through ``alpha^0 l, alpha^1 l, ..., alpha^(t-1) l``.  Every matrix and
vector indexed by orbits uses this order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence, Union

from .finite_field import FiniteField

__all__ = ["INF", "OrbitFrame", "Rep", "build_frame", "perp_line", "hit_counts", "FrameError"]


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()
LineLabel = Union[int, _Infinity]


class FrameError(ValueError):
    pass


def parse_line(text: str) -> LineLabel:
    return INF if text.strip().lower() in ("inf", "∞") else int(text)


@dataclass(frozen=True)
class Rep:
    """The representative ``alpha^power * l_line``."""

    index: int
    power: int
    line: LineLabel
    vector: tuple[int, int]


@dataclass(frozen=True)
class OrbitFrame:
    field: FiniteField
    H: tuple[int, ...]
    t: int
    lines: tuple[LineLabel, ...]
    line_vectors: tuple[tuple[int, int], ...]
    reps: tuple[Rep, ...]
    _index: dict = dc_field(repr=False, compare=False, hash=False)

    @property
    def tau(self) -> int:
        return len(self.reps)

    @property
    def orbit_size(self) -> int:
        return (self.field.q - 1) // self.t

    def __len__(self) -> int:
        return len(self.reps)

    def __iter__(self) -> Iterator[Rep]:
        return iter(self.reps)

    def block_of(self, line: LineLabel) -> int:
        return self.lines.index(line)

    def index(self, power: int, line: LineLabel) -> int:
        """Position of ``alpha^power * l_line`` in the representative list."""
        return self.block_of(line) * self.t + power % self.t

    def rep_vectors(self) -> list[tuple[int, int]]:
        return [r.vector for r in self.reps]

    def locate(self, v: Sequence[int]) -> tuple[int, int]:
        """Write a nonzero ``v`` as ``h * rep``; returns ``(h, rep_index)``."""
        F = self.field
        x0, x1 = v
        if x0 == 0 and x1 == 0:
            raise FrameError("the zero vector lies in no nonzero orbit")
        if x0 == 0:
            line, scalar = INF, x1
        else:
            ratio = F.mul(x1, F.inv(x0))
            line = 0 if ratio == 0 else (F.log(ratio) or F.q - 1)
            scalar = x0
        k = F.log(scalar)
        i = k % self.t
        h = F.alpha_pow(k - i)
        return h, self._index[(i, line)]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        F = self.field
        return F.add(F.mul(u[0], v[0]), F.mul(u[1], v[1]))

    def dump(self) -> str:
        """One representative per line: ``i,mu,x0,x1`` with ``x0, x1`` as codes."""
        return "\n".join(f"{r.power},{r.line},{r.vector[0]},{r.vector[1]}" for r in self.reps)


def _line_vector(F: FiniteField, mu: LineLabel) -> tuple[int, int]:
    if mu is INF:
        return (0, 1)
    if mu == 0:
        return (1, 0)
    return (1, F.alpha_pow(mu))


def build_frame(F: FiniteField, H: Sequence[int]) -> OrbitFrame:
    H = tuple(sorted(set(H)))
    q = F.q
    if 0 in H or 1 not in H or (q - 1) % len(H):
        raise FrameError(f"{list(H)} is not a subgroup of F_{q}^x")
    t = (q - 1) // len(H)
    closure = {F.alpha_pow(t * k) for k in range(len(H))}
    if closure != set(H):
        raise FrameError(f"{list(H)} is not the subgroup generated by alpha^{t}")

    lines: tuple[LineLabel, ...] = (INF,) + tuple(range(q))
    vectors = tuple(_line_vector(F, mu) for mu in lines)
    reps = []
    index = {}
    for b, (mu, vec) in enumerate(zip(lines, vectors)):
        for i in range(t):
            a = F.alpha_pow(i)
            v = (F.mul(a, vec[0]), F.mul(a, vec[1]))
            index[(i, mu)] = len(reps)
            reps.append(Rep(len(reps), i, mu, v))
    frame = OrbitFrame(F, H, t, lines, vectors, tuple(reps), index)
    _check_partition(frame)
    return frame


def _check_partition(frame: OrbitFrame) -> None:
    F = frame.field
    seen = set()
    for r in frame.reps:
        orbit = {(F.mul(h, r.vector[0]), F.mul(h, r.vector[1])) for h in frame.H}
        if len(orbit) != len(frame.H) or orbit & seen:
            raise FrameError("representatives do not partition F_q^2 \\ {0}")  # pragma: no cover
        seen |= orbit
    if len(seen) != F.q * F.q - 1:
        raise FrameError("representatives do not cover F_q^2 \\ {0}")  # pragma: no cover


def perp_line(frame: OrbitFrame, mu: LineLabel) -> LineLabel:
    """The unique line label ``nu`` with ``l_nu . l_mu = 0``."""
    F = frame.field
    if mu is INF:
        return 0
    if mu == 0:
        return INF
    if not 1 <= mu <= F.q - 1:
        raise FrameError(f"no line with label {mu}")
    # alpha^nu = -alpha^(-mu)
    nu = F.log(F.neg(F.alpha_pow(-mu)))
    return nu or F.q - 1


def hit_counts(frame: OrbitFrame, rep1: int, rep2: int) -> Counter:
    """Tally ``x -> (x . rep1, x . rep2)`` over the representatives ``x``.

    Keys are representative indices of the image orbit, or ``None`` for the
    zero vector.
    """
    if not (0 <= rep1 < frame.tau and 0 <= rep2 < frame.tau):
        raise FrameError("representative index out of range")
    u = frame.reps[rep1].vector
    v = frame.reps[rep2].vector
    out: Counter = Counter()
    for x in frame.reps:
        image = (frame.dot(x.vector, u), frame.dot(x.vector, v))
        if image == (0, 0):
            out[None] += 1
        else:
            out[frame.locate(image)[1]] += 1
    return out
