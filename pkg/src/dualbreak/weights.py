"""Weights on F_q and Z/mZ: symmetry groups, orbit matrices, correlations.

A weight is stored as a full value table indexed by element code (field)
or residue ``0..m-1`` (ring).  Values are Fractions so library users may
experiment with rational weights; the code-construction pipeline insists
on integers separately.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import isprime, sieve

from .finite_field import FiniteField, ResidueRing, build_field
from .linalg import ExactMatrix

__all__ = [
    "WeightError",
    "WeightFn",
    "InvariantFn",
    "symmetry_group",
    "t_parameter",
    "circulant_matrix",
    "orbit_matrix",
    "is_nondegenerate",
    "Nondegeneracy",
    "correlations",
    "main_theorem_hypotheses",
    "HypothesisReport",
    "t2_equality_roots",
    "power_weight",
    "power_weight_sides",
    "symbolic_power_sides",
    "scan_power_weights",
    "ScanRow",
    "scan_to_csv",
    "scan_to_json",
    "hamming_weight",
]

Carrier = Union[FiniteField, ResidueRing]


class WeightError(ValueError):
    pass


def _size(carrier: Carrier) -> int:
    return carrier.q if isinstance(carrier, FiniteField) else carrier.m


def _units(carrier: Carrier) -> list[int]:
    return list(carrier.units)


class WeightFn:
    """A weight ``w`` on a finite field or on Z/mZ, given by its value table."""

    def __init__(self, carrier: Carrier, values: Sequence):
        size = _size(carrier)
        if len(values) != size:
            raise WeightError(f"expected {size} values, got {len(values)}")
        vals = tuple(Fraction(v) for v in values)
        if vals[0] != 0:
            raise WeightError("a weight must vanish at 0")
        bad = [r for r in range(1, size) if vals[r] <= 0]
        if bad:
            raise WeightError(f"weight must be positive off 0; fails at {bad[:5]}")
        self.carrier = carrier
        self.values = vals
        self.H = symmetry_group(self)

    # ---- constructors
    @classmethod
    def from_table(cls, carrier: Carrier, values: Sequence) -> "WeightFn":
        return cls(carrier, values)

    @classmethod
    def from_coset_values(cls, field: FiniteField, values: Sequence) -> "WeightFn":
        """Weight with ``w(alpha^k) = values[k mod t]`` where ``t = len(values)``."""
        t = len(values)
        if t < 1 or (field.q - 1) % t:
            raise WeightError(f"t = {t} does not divide q - 1 = {field.q - 1}")
        table = [Fraction(0)] * field.q
        for k in range(field.q - 1):
            table[field.alpha_pow(k)] = Fraction(values[k % t])
        return cls(field, table)

    # ---- basic access
    def __call__(self, r: int) -> Fraction:
        return self.values[r]

    @property
    def is_field(self) -> bool:
        return isinstance(self.carrier, FiniteField)

    @property
    def field(self) -> FiniteField:
        if not self.is_field:
            raise WeightError("this weight lives on Z/mZ, not on a field")
        return self.carrier

    @property
    def t(self) -> int:
        return t_parameter(self)

    @property
    def w_min_pos(self) -> Fraction:
        return min(self.values[1:])

    @property
    def w_max(self) -> Fraction:
        return max(self.values)

    def coset_values(self) -> tuple[Fraction, ...]:
        """``(w(alpha^0), ..., w(alpha^(t-1)))``."""
        F = self.field
        return tuple(self.values[F.alpha_pow(j)] for j in range(self.t))

    @property
    def w_breve(self) -> Fraction:
        return sum(self.coset_values(), Fraction(0))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def vector_weight(self, v: Iterable[int]) -> Fraction:
        return sum((self.values[x] for x in v), Fraction(0))

    def invariant(self) -> "InvariantFn":
        return InvariantFn(self.field, self.t, Fraction(0), self.coset_values())

    def over_field(self, field: FiniteField) -> "WeightFn":
        """Move a weight on Z/pZ onto the prime field ``field`` (same residues)."""
        if self.is_field:
            return self
        if field.l != 1 or field.p != self.carrier.m:
            raise WeightError(f"Z/{self.carrier.m}Z is not the field {field!r}")
        return WeightFn(field, self.values)

    def describe(self) -> dict:
        return {"values": [str(v) for v in self.values]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightFn):
            return NotImplemented
        return self.carrier == other.carrier and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.carrier, self.values))

    def __repr__(self) -> str:
        shown = ",".join(str(v) for v in self.values[:12])
        more = ",..." if len(self.values) > 12 else ""
        return f"WeightFn({self.carrier!r}, [{shown}{more}])"


@dataclass(frozen=True)
class InvariantFn:
    """A function on F_q invariant under ``H = <alpha^t>``.

    ``zero`` is the value at 0 and ``cosets[j]`` the value on ``alpha^j H``.
    Unlike a weight it may take any rational values, including at 0.
    """

    field: FiniteField
    t: int
    zero: Fraction
    cosets: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.cosets) != self.t:
            raise WeightError("need exactly t coset values")
        object.__setattr__(self, "zero", Fraction(self.zero))
        object.__setattr__(self, "cosets", tuple(Fraction(c) for c in self.cosets))

    @classmethod
    def from_table(cls, field: FiniteField, t: int, table: Sequence) -> "InvariantFn":
        vals = [Fraction(x) for x in table]
        cosets = [vals[field.alpha_pow(j)] for j in range(t)]
        for k in range(field.q - 1):
            if vals[field.alpha_pow(k)] != cosets[k % t]:
                raise WeightError(f"table is not invariant under alpha^{t}")
        return cls(field, t, vals[0], tuple(cosets))

    def __call__(self, r: int) -> Fraction:
        if r == 0:
            return self.zero
        return self.cosets[self.field.log(r) % self.t]

    def at_power(self, j: int) -> Fraction:
        return self.cosets[j % self.t]

    @property
    def breve(self) -> Fraction:
        return sum(self.cosets, Fraction(0))

    def scaled(self, c) -> "InvariantFn":
        c = Fraction(c)
        return InvariantFn(self.field, self.t, c * self.zero, tuple(c * x for x in self.cosets))

    def table(self) -> list[Fraction]:
        return [self(r) for r in range(self.field.q)]


def _as_invariant(a) -> InvariantFn:
    if isinstance(a, InvariantFn):
        return a
    if isinstance(a, WeightFn):
        return a.invariant()
    raise TypeError(f"expected an H-invariant function, got {type(a).__name__}")


def hamming_weight(carrier: Carrier) -> WeightFn:
    n = _size(carrier)
    return WeightFn(carrier, [0] + [1] * (n - 1))


# ---------------------------------------------------------------- structure

def symmetry_group(w: WeightFn) -> tuple[int, ...]:
    """All units ``u`` with ``w(u r) = w(r)`` for every ``r``, by brute force."""
    c = w.carrier
    vals = w.values
    size = _size(c)
    out = []
    for u in _units(c):
        if all(vals[c.mul(u, r)] == vals[r] for r in range(1, size)):
            out.append(u)
    return tuple(sorted(out))


def t_parameter(w: WeightFn) -> int:
    F = w.field
    t = (F.q - 1) // len(w.H)
    # H is cyclic, so alpha^t must land in it and generate it
    if F.alpha_pow(t) not in w.H:  # pragma: no cover
        raise WeightError("symmetry group is not generated by a power of alpha")
    return t


def circulant_matrix(w) -> ExactMatrix:
    """The t x t matrix with entries ``w(alpha^(i+j))``."""
    a = _as_invariant(w)
    t = a.t
    return ExactMatrix([[a.at_power(i + j) for j in range(t)] for i in range(t)])


def _orbit_reps(w: WeightFn) -> list[int]:
    """Smallest canonical representative of each nonzero H-orbit, sorted."""
    c = w.carrier
    size = _size(c)
    seen = set()
    reps = []

    def key(r: int):
        if isinstance(c, ResidueRing):
            s = c.canonical(r)
            return (abs(s), s < 0)
        return (r,)

    for r in range(1, size):
        if r in seen:
            continue
        orbit = {c.mul(h, r) for h in w.H}
        seen |= orbit
        reps.append(min(orbit, key=key))
    reps.sort(key=key)
    return reps


def orbit_matrix(w: WeightFn) -> tuple[ExactMatrix, list[int]]:
    """General orbit matrix ``w(x * lambda)``, functionals identified with elements."""
    reps = _orbit_reps(w)
    c = w.carrier
    M = ExactMatrix([[w.values[c.mul(x, y)] for y in reps] for x in reps])
    return M, reps


@dataclass(frozen=True)
class Nondegeneracy:
    nondegenerate: bool
    rank: int
    size: int
    det: Fraction
    kernel: tuple[Fraction, ...] | None

    def __bool__(self) -> bool:
        return self.nondegenerate


def is_nondegenerate(w) -> Nondegeneracy:
    """Rank test of the circulant (fields) or the orbit matrix (Z/mZ)."""
    if isinstance(w, WeightFn) and not w.is_field:
        M, _ = orbit_matrix(w)
    else:
        M = circulant_matrix(w)
    rank = M.rank()
    full = rank == M.nrows
    det = M.det() if full else Fraction(0)
    kernel = None if full else tuple(M.kernel_vector())
    return Nondegeneracy(full, rank, M.nrows, det, kernel)


def correlations(a, b, m: int) -> Fraction:
    """``c_m(a, b) = sum_j a(alpha^j) b(alpha^(m+j))`` over ``j < t``."""
    a = _as_invariant(a)
    b = _as_invariant(b)
    if a.field != b.field or a.t != b.t:
        raise WeightError("correlation needs functions on the same field and subgroup")
    return sum((a.at_power(j) * b.at_power(m + j) for j in range(a.t)), Fraction(0))


# ---------------------------------------------------------------- hypotheses

HYPOTHESES = (
    "nondegenerate",
    "minus_one_in_H",
    "H_proper",
    "unique_min_orbit",
    "distinct_values",
)


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    detail: str


@dataclass(frozen=True)
class HypothesisReport:
    verdicts: tuple[Verdict, ...]
    t: int
    H: tuple[int, ...]
    det: Fraction
    w_breve: Fraction
    correlations: tuple[Fraction, ...]
    compared: tuple[tuple[str, Fraction], ...]

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def first_failure(self) -> Verdict | None:
        return next((v for v in self.verdicts if not v.holds), None)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)


def main_theorem_hypotheses(w: WeightFn) -> HypothesisReport:
    if not w.is_field:
        raise WeightError("the hypotheses are stated for weights on a field")
    if not w.is_integral():
        raise WeightError("the hypotheses are stated for integer-valued weights")
    F = w.field
    q, t = F.q, w.t
    nd = is_nondegenerate(w)
    cos = w.coset_values()
    wmin = min(cos)
    n_min = sum(1 for v in cos if v == wmin)
    cs = tuple(correlations(w, w, m) for m in range(t))
    compared = [(f"q*c_{m}", q * cs[m]) for m in range(1, t // 2 + 1)]
    compared.append(("((q-1)/t)*w_breve^2", Fraction(q - 1, t) * w.w_breve**2))
    distinct = len({v for _, v in compared}) >= 2
    verdicts = (
        Verdict("nondegenerate", nd.nondegenerate, f"det = {nd.det}, rank {nd.rank}/{nd.size}"),
        Verdict("minus_one_in_H", F.minus_one in w.H, f"H = {list(w.H)}"),
        Verdict("H_proper", t > 1, f"|H| = {len(w.H)}, t = {t}"),
        Verdict("unique_min_orbit", n_min == 1, f"min positive value {wmin} on {n_min} orbit(s)"),
        Verdict("distinct_values", distinct, ", ".join(f"{k} = {v}" for k, v in compared)),
    )
    return HypothesisReport(verdicts, t, w.H, nd.det, w.w_breve, cs, tuple(compared))


def t2_equality_roots(q: int) -> tuple[Fraction, Fraction] | None:
    """Roots of ``(q-1) - 2(q+1)x + (q-1)x^2``; None when they are irrational."""
    if q % 2 == 0:
        raise WeightError("the t = 2 analysis needs odd q")
    if q < 3:
        raise WeightError(f"q = {q} is not an odd prime power")
    from math import isqrt

    r = isqrt(q)
    if r * r != q:
        return None
    return Fraction(r + 1, r - 1), Fraction(r - 1, r + 1)


# ---------------------------------------------------------------- power weights

def power_weight(m: int, ell: int) -> WeightFn:
    """``w(r) = |r|^ell`` with ``-m/2 < r <= m/2``; ``ell = 0`` gives Hamming."""
    if ell < 0:
        raise WeightError("exponent must be nonnegative")
    R = ResidueRing(m)
    return WeightFn(R, [0] + [abs(R.canonical(r)) ** ell for r in range(1, m)])


def power_weight_sides(p: int, ell: int) -> tuple[int, int]:
    """``(p*c_1, ((p-1)/t) * w_breve^2)`` for the power weight on F_p."""
    w = power_weight(p, ell).over_field(build_field(p))
    t = w.t
    c1 = correlations(w, w, 1)
    return int(p * c1), int(Fraction(p - 1, t) * w.w_breve**2)


def symbolic_power_sides(p: int):
    """The two sides above as sympy expressions in a positive integer ``ell``.

    Both are sums of ``k**ell`` terms, because ``|r|^ell |s|^ell = (|r||s|)^ell``.
    """
    import sympy

    ell = sympy.Symbol("ell", integer=True, positive=True)
    F = build_field(p)
    R = ResidueRing(p)
    t = (p - 1) // 2
    mags = [abs(R.canonical(F.alpha_pow(j))) for j in range(t + 1)]
    c1 = sum(sympy.Integer(mags[j] * mags[j + 1]) ** ell for j in range(t))
    breve = sum(sympy.Integer(mags[j]) ** ell for j in range(t))
    return p * c1, sympy.Rational(p - 1, t) * breve**2, ell


@dataclass(frozen=True)
class ScanRow:
    p: int
    ell: int
    t: int
    nondegenerate: bool | None
    c1_ne_c2: bool | None

    def as_dict(self) -> dict:
        return {"p": self.p, "ell": self.ell, "t": self.t,
                "nondegenerate": self.nondegenerate, "c1_ne_c2": self.c1_ne_c2}

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRow":
        return cls(int(d["p"]), int(d["ell"]), int(d["t"]), d["nondegenerate"], d["c1_ne_c2"])


def scan_cell(p: int, ell: int) -> ScanRow:
    w = power_weight(p, ell).over_field(build_field(p))
    t = w.t
    if t == 1:
        return ScanRow(p, ell, t, None, None)
    nd = is_nondegenerate(w).nondegenerate
    c12 = None
    if t >= 5:
        c12 = correlations(w, w, 1) != correlations(w, w, 2)
    return ScanRow(p, ell, t, nd, c12)


def _cell_star(args):
    return scan_cell(*args)


def scan_power_weights(primes: Iterable[int], ells: Iterable[int], jobs: int = 1, cache: dict | None = None):
    """Scan power weights over prime fields; rows sorted by ``(p, ell)``.

    ``cache`` maps ``(p, ell)`` to an existing :class:`ScanRow`; those cells
    are reused rather than recomputed.
    """
    primes = sorted(set(primes))
    ells = sorted(set(ells))
    for p in primes:
        if not isprime(p) or p < 5:
            raise WeightError(f"scan needs primes >= 5, got {p}")
    if any(e < 0 for e in ells):
        raise WeightError("exponents must be nonnegative")
    cache = dict(cache or {})
    todo = [(p, e) for p in primes for e in ells if (p, e) not in cache]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_cell_star, todo))
    else:
        rows = [scan_cell(p, e) for p, e in todo]
    for r in rows:
        cache[(r.p, r.ell)] = r
    return [cache[(p, e)] for p in primes for e in ells]


def primes_between(lo: int, hi: int) -> list[int]:
    return list(sieve.primerange(lo, hi + 1))


def _flag(v: bool | None) -> str:
    return "n/a" if v is None else ("true" if v else "false")


def scan_to_csv(rows: Sequence[ScanRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["p", "ell", "nondegenerate", "c1_ne_c2"])
    for r in rows:
        wr.writerow([r.p, r.ell, _flag(r.nondegenerate), _flag(r.c1_ne_c2)])
    return buf.getvalue()


def scan_to_json(rows: Sequence[ScanRow]) -> str:
    return json.dumps([r.as_dict() for r in rows], indent=2, sort_keys=True) + "\n"
