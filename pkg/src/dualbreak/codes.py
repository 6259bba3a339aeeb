"""Build two 2-dimensional codes with equal weight enumerators and
different dual enumerators.

A code is described by a multiplicity function ``eta`` on the orbit
representatives of a frame: the generator matrix has ``eta[i]`` columns
equal to representative ``i``.  The message vector ``lambda`` then yields a
codeword of weight ``(W eta)[lambda]``, and every codeword in the H-orbit
of ``lambda`` has that weight.

Everything here is exact.  The certificate produced at the end can be
re-checked from the field, the weight and the two ``eta`` vectors alone.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .finite_field import FiniteField, build_field
from .linalg import ExactMatrix, format_rational, parse_rational
from .orbits import INF, OrbitFrame, build_frame
from .structured import build_A, invert_A, product_blocks
from .weights import InvariantFn, WeightError, WeightFn, correlations, main_theorem_hypotheses

__all__ = [
    "ConstructionError",
    "HypothesisFailure",
    "omega_from_subset",
    "AffineEta",
    "solve_eta",
    "feasible_interval",
    "DeltaBounds",
    "delta_bounds",
    "Selection",
    "select_subsets",
    "Quadratic",
    "q_functional",
    "f_rho",
    "choose_rho",
    "scale_and_build",
    "generator_matrix",
    "weight_distribution",
    "brute_force_distribution",
    "egalitarian_check",
    "DualCounts",
    "dual_small_weight_counts",
    "cross_coset_count",
    "Certificate",
    "build_certificate",
    "verify_certificate",
    "VerifyReport",
]


class ConstructionError(RuntimeError):
    pass


class HypothesisFailure(ConstructionError):
    def __init__(self, verdict):
        super().__init__(f"hypothesis '{verdict.name}' fails: {verdict.detail}")
        self.verdict = verdict


# ---------------------------------------------------------------- eta and omega

def omega_from_subset(frame: OrbitFrame, S: Sequence[int], rho) -> list[Fraction]:
    """``rho`` on the representatives in ``S``, 1 elsewhere."""
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    if any(not 0 <= i < frame.tau for i in S):
        raise ValueError(f"subset {list(S)} leaves the range 0..{frame.tau - 1}")
    chosen = set(S)
    return [rho if i in chosen else Fraction(1) for i in range(frame.tau)]


@dataclass(frozen=True)
class AffineEta:
    """``eta(lambda) = P(lambda) + Q(lambda) * rho``."""

    S: tuple[int, ...]
    P: tuple[Fraction, ...]
    Q: tuple[Fraction, ...]

    def evaluate(self, rho) -> list[Fraction]:
        rho = Fraction(rho)
        return [p + q * rho for p, q in zip(self.P, self.Q)]

    def scaled(self, c) -> tuple[list[Fraction], list[Fraction]]:
        c = Fraction(c)
        return [c * p for p in self.P], [c * q for q in self.Q]

    def interval(self) -> tuple[Fraction, Fraction | None]:
        """Positive rho values making every entry nonnegative, as ``[lo, hi]``."""
        lo, hi = Fraction(0), None
        for p, q in zip(self.P, self.Q):
            if q > 0:
                lo = max(lo, -p / q)
            elif q < 0:
                r = p / -q
                hi = r if hi is None else min(hi, r)
            elif p < 0:
                return Fraction(1), Fraction(0)
        return lo, hi


def solve_eta(W: ExactMatrix, S: Sequence[int], inverse: ExactMatrix | None = None) -> AffineEta:
    """Solve ``W eta = omega`` symbolically in rho for the subset ``S``."""
    Winv = inverse if inverse is not None else W.inverse()
    chosen = set(S)
    P, Q = [], []
    for row in Winv.rows:
        q = sum((row[j] for j in chosen), Fraction(0))
        P.append(sum(row, Fraction(0)) - q)
        Q.append(q)
    return AffineEta(tuple(sorted(chosen)), tuple(P), tuple(Q))


def feasible_interval(*etas: AffineEta) -> tuple[Fraction, Fraction | None]:
    lo, hi = Fraction(0), None
    for e in etas:
        a, b = e.interval()
        lo = max(lo, a)
        if b is not None:
            hi = b if hi is None else min(hi, b)
    return lo, hi


@dataclass(frozen=True)
class DeltaBounds:
    s: int
    lo: Fraction
    hi: Fraction | None
    lo_witness: tuple[tuple[int, ...], int] | None
    hi_witness: tuple[tuple[int, ...], int] | None
    subsets: int


def delta_bounds(Winv: ExactMatrix, s: int, max_subsets: int = 2_000_000) -> DeltaBounds:
    """Worst case of the rho interval over every size-``s`` subset.

    The maximum of ``-P/Q`` over entries with ``P < 0`` and the minimum of
    ``P/-Q`` over entries with ``Q < 0``, subsets in lexicographic order with
    the first optimum kept as witness ``(subset, row)``.
    """
    tau = Winv.nrows
    if not 0 < s < tau:
        raise ValueError(f"subset size {s} outside 1..{tau - 1}")
    count = comb(tau, s)
    if count > max_subsets:
        raise ValueError(f"{count} subsets of size {s} is above the limit {max_subsets}")
    D = lcm(*(x.denominator for row in Winv.rows for x in row))
    M = [[int(x * D) for x in row] for row in Winv.rows]
    R = [sum(row) for row in M]
    best_lo = (0, 1)  # as a fraction num/den
    lo_w = None
    best_hi = None
    hi_w = None
    for S in combinations(range(tau), s):
        for lam in range(tau):
            row = M[lam]
            Q = sum(row[j] for j in S)
            P = R[lam] - Q
            if P < 0:
                # -P/Q > best_lo ?  (Q > 0 because P + Q = row sum > 0)
                if -P * best_lo[1] > best_lo[0] * Q:
                    best_lo, lo_w = (-P, Q), (S, lam)
            if Q < 0:
                if best_hi is None or P * best_hi[1] < best_hi[0] * -Q:
                    best_hi, hi_w = (P, -Q), (S, lam)
    lo = Fraction(*best_lo)
    hi = None if best_hi is None else Fraction(*best_hi)
    return DeltaBounds(s, lo, hi, lo_w, hi_w, count)


# ---------------------------------------------------------------- subsets and rho

@dataclass(frozen=True)
class Selection:
    S: tuple[int, ...]
    S_prime: tuple[int, ...]
    case: str
    m: tuple[int, ...]


def _w2_entries(frame: OrbitFrame, b: InvariantFn) -> tuple[list[Fraction], Fraction]:
    """Diagonal-block shifts and the off-block constant of ``B^2``."""
    q, t = frame.field.q, frame.t
    diag = [t * b.zero**2 + q * correlations(b, b, m) for m in range(t)]
    off = 2 * b.zero * b.breve + Fraction(q - 1, t) * b.breve**2
    return diag, off


def select_subsets(frame: OrbitFrame, b: InvariantFn) -> Selection:
    """Pick ``S`` and ``S'`` so that ``f(rho)`` is a nonzero quadratic.

    Compares entries of ``W^-2``: the ``(l_0, alpha^m l_0)`` entry against the
    ``(l_0, l_inf)`` entry (case 1), else two diagonal shifts (case 2).
    """
    t = frame.t
    l0 = frame.index(0, 0)
    linf = frame.index(0, INF)
    diag, off = _w2_entries(frame, b)
    for m in range(1, t // 2 + 1):
        if diag[m] != off:
            return Selection(tuple(sorted((l0, frame.index(m, 0)))), tuple(sorted((l0, linf))), "1", (m,))
    for m1 in range(1, t):
        for m2 in range(m1 + 1, t):
            if diag[m1] != diag[m2]:
                return Selection(
                    tuple(sorted((l0, frame.index(m1, 0)))),
                    tuple(sorted((l0, frame.index(m2, 0)))),
                    "2",
                    (m1, m2),
                )
    raise ConstructionError("W^-2 has the simple form M_{x,y}: no subset pair separates the duals")


@dataclass(frozen=True)
class Quadratic:
    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return self.c0 + self.c1 * x + self.c2 * x * x

    def derivative(self, x) -> Fraction:
        return self.c1 + 2 * self.c2 * Fraction(x)

    def is_zero(self) -> bool:
        return self.c0 == self.c1 == self.c2 == 0

    def __str__(self) -> str:
        text = ""
        for c, mono in ((self.c2, "*rho^2"), (self.c1, "*rho"), (self.c0, "")):
            if not c:
                continue
            mag = format_rational(abs(c))
            if text:
                text += f" {'+' if c > 0 else '-'} {mag}{mono}"
            else:
                text = f"{'-' if c < 0 else ''}{mag}{mono}"
        return text or "0"


def q_functional(eta: Sequence) -> Fraction:
    """``sum eta (eta - 1)``; counts ordered doubletons in the dual, up to |H|."""
    return sum((Fraction(e) * (Fraction(e) - 1) for e in eta), Fraction(0))


def f_rho(eta: AffineEta, eta2: AffineEta, scale=1) -> Quadratic:
    """``q(scale*eta) - q(scale*eta2)`` as a polynomial in rho."""
    c = Fraction(scale)

    def parts(e: AffineEta):
        a0 = a1 = a2 = Fraction(0)
        for p, q in zip(e.P, e.Q):
            p, q = c * p, c * q
            a0 += p * p - p
            a1 += 2 * p * q - q
            a2 += q * q
        return a0, a1, a2

    x, y = parts(eta), parts(eta2)
    return Quadratic(x[0] - y[0], x[1] - y[1], x[2] - y[2])


def choose_rho(lo: Fraction, hi: Fraction | None, f: Quadratic, depth: int = 12) -> Fraction:
    """First candidate with ``f(rho) != 0``: lo, hi, then bisection midpoints."""
    lo = Fraction(lo)
    if hi is None:
        hi = 2 * max(lo, Fraction(1))
    hi = Fraction(hi)
    if lo > hi:
        raise ConstructionError(f"empty interval [{lo}, {hi}]")
    if f.is_zero():
        raise ConstructionError("f(rho) vanishes identically")
    cands = [lo, hi]
    level = [(lo, hi)]
    for _ in range(depth):
        nxt = []
        for a, b in level:
            mid = (a + b) / 2
            cands.append(mid)
            nxt += [(a, mid), (mid, b)]
        level = nxt
    for r in cands:
        if r > 0 and f(r) != 0:
            return r
    raise ConstructionError("no admissible rho found")  # pragma: no cover


def scale_and_build(
    eta: Sequence[Fraction], eta2: Sequence[Fraction], N: int | None = None
) -> tuple[int, list[int], list[int], int]:
    """Scale both vectors to integers; ``N`` defaults to the smallest that works."""
    if any(x < 0 for x in list(eta) + list(eta2)):
        raise ConstructionError("negative multiplicity: rho lies outside the feasible interval")
    base = lcm(*(Fraction(x).denominator for x in list(eta) + list(eta2)))
    if N is None:
        N = base
    elif N <= 0 or N % base:
        raise ConstructionError(f"N = {N} does not clear the denominators; use a multiple of {base}")
    a = [int(N * x) for x in eta]
    b = [int(N * x) for x in eta2]
    if sum(a) != sum(b):
        raise ConstructionError(f"lengths differ: {sum(a)} vs {sum(b)}")
    return N, a, b, sum(a)


# ---------------------------------------------------------------- distributions

def generator_matrix(frame: OrbitFrame, eta: Sequence[int]) -> list[list[int]]:
    cols = []
    for r, e in zip(frame.reps, eta):
        cols += [r.vector] * int(e)
    return [[c[0] for c in cols], [c[1] for c in cols]]


def weight_distribution(frame: OrbitFrame, eta: Sequence[int], W: ExactMatrix) -> dict:
    """``{weight: count}`` from ``omega = W eta``; each orbit has ``(q-1)/t`` words."""
    omega = W @ list(eta)
    out = {0: 1}
    size = frame.orbit_size
    for w in omega:
        key = int(w) if w.denominator == 1 else w
        out[key] = out.get(key, 0) + size
    return dict(sorted(out.items()))


def brute_force_distribution(F: FiniteField, G: Sequence[Sequence[int]], w: WeightFn) -> dict:
    """Weight distribution of the row space of a 2 x n matrix, word by word.

    Equal columns give equal entries in every word, so each distinct column
    is evaluated once and weighted by how often it occurs in ``G``.
    """
    cols = Counter(zip(G[0], G[1]))
    out: Counter = Counter()
    for a in range(F.q):
        for b in range(F.q):
            wt = sum((m * w(F.add(F.mul(a, x), F.mul(b, y))) for (x, y), m in cols.items()), Fraction(0))
            out[int(wt) if wt.denominator == 1 else wt] += 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class EgalitarianVerdict:
    total: Fraction
    zeta: Fraction
    code_size: int
    efflength: int

    @property
    def holds(self) -> bool:
        return self.total == self.zeta * self.code_size * self.efflength


def egalitarian_check(w: WeightFn, eta: Sequence[int], distribution: dict) -> EgalitarianVerdict:
    """``sum_c w(c) = zeta |C| efflength(C)`` with ``zeta`` the mean weight on F_q."""
    total = sum((Fraction(k) * v for k, v in distribution.items()), Fraction(0))
    zeta = sum(w.values, Fraction(0)) / w.field.q
    size = sum(distribution.values())
    eff = sum(int(e) for e in eta) if size > 1 else 0
    return EgalitarianVerdict(total, zeta, size, eff)


@dataclass(frozen=True)
class DualCounts:
    weight: int
    count: int
    per_rep: tuple[int, ...]
    zero_columns: int


def dual_small_weight_counts(frame: OrbitFrame, eta: Sequence[int], w: WeightFn, zero_columns: int = 0) -> DualCounts:
    """Number of dual codewords of weight twice the minimum positive weight.

    Only doubletons can reach that weight.  Two nonzero columns must be the
    same representative, giving ``|H| * C(eta_i, 2)``.  Zero columns add
    pairs (``|H|^2 * C(n0, 2)``) and singletons carrying a value of weight
    exactly twice the minimum.
    """
    rep = main_theorem_hypotheses(w)
    for name in ("unique_min_orbit", "minus_one_in_H"):
        if not rep[name].holds:
            raise HypothesisFailure(rep[name])
    h = len(frame.H)
    per = tuple(h * comb(int(e), 2) for e in eta)
    total = sum(per)
    n0 = zero_columns
    if n0:
        wmin = w.w_min_pos
        total += h * h * comb(n0, 2)
        total += n0 * sum(1 for r in range(1, w.field.q) if w(r) == 2 * wmin)
    return DualCounts(int(2 * w.w_min_pos), total, per, n0)


def cross_coset_count(frame: OrbitFrame, eta: Sequence[int], w: WeightFn) -> tuple[int, int]:
    """For t = 2: dual doubletons of weight ``w(1) + w(alpha)``, as ``(weight, count)``.

    A doubleton on columns ``alpha^i l`` and ``alpha^j l`` of one line has
    one entry in each coset exactly when ``i != j``; nothing else reaches
    that weight as long as three minimum weights exceed it.
    """
    if frame.t != 2:
        raise WeightError("the cross-coset count is defined for t = 2")
    F = frame.field
    w1, w2 = w(1), w(F.alpha)
    target = w1 + w2
    if 3 * min(w1, w2) <= target:
        raise WeightError("three minimum weights do not exceed w(1) + w(alpha)")
    total = 0
    for mu in frame.lines:
        total += (F.q - 1) * int(eta[frame.index(0, mu)]) * int(eta[frame.index(1, mu)])
    return int(target), total


# ---------------------------------------------------------------- certificates

def _ser_dist(d: dict) -> list:
    return [[k if isinstance(k, int) else format_rational(k), v] for k, v in sorted(d.items())]


def _de_dist(pairs) -> dict:
    out = {}
    for k, v in pairs:
        key = k if isinstance(k, int) else parse_rational(k)
        if isinstance(key, Fraction) and key.denominator == 1:
            key = int(key)
        out[key] = int(v)
    return out


@dataclass
class Certificate:
    field: FiniteField
    weight: WeightFn
    S: tuple[int, ...]
    S_prime: tuple[int, ...]
    case: str
    rho: Fraction
    N: int
    n: int
    eta_C: list[int]
    eta_D: list[int]
    wwe_C: dict
    wwe_D: dict
    witness_weight: int | None
    witness_C: int | None
    witness_D: int | None
    witness_source: str
    forced: bool = False
    notes: list[str] = dc_field(default_factory=list)
    dual_wwe_C: dict | None = None
    dual_wwe_D: dict | None = None
    dual_degree: int | None = None

    @property
    def frame(self) -> OrbitFrame:
        return build_frame(self.field, self.weight.H)

    @property
    def separates(self) -> bool:
        return self.witness_C is not None and self.witness_C != self.witness_D

    def to_dict(self) -> dict:
        fr = self.frame
        d = {
            "field": self.field.describe(),
            "weight": [format_rational(v) for v in self.weight.values],
            "t": fr.t,
            "frame": fr.dump().splitlines(),
            "S": list(self.S),
            "S_prime": list(self.S_prime),
            "case": self.case,
            "rho": format_rational(self.rho),
            "N": self.N,
            "n": self.n,
            "eta_C": list(self.eta_C),
            "eta_D": list(self.eta_D),
            "wwe_C": _ser_dist(self.wwe_C),
            "wwe_D": _ser_dist(self.wwe_D),
            "witness": {
                "weight": self.witness_weight,
                "C": self.witness_C,
                "D": self.witness_D,
                "source": self.witness_source,
            },
            "forced": self.forced,
            "notes": list(self.notes),
        }
        if self.dual_wwe_C is not None:
            d["dual"] = {
                "degree": self.dual_degree,
                "C": _ser_dist(self.dual_wwe_C),
                "D": _ser_dist(self.dual_wwe_D),
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        fd = d["field"]
        F = build_field(fd["p"], fd["l"], fd["modulus"], fd["alpha"])
        w = WeightFn(F, [parse_rational(v) for v in d["weight"]])
        wit = d.get("witness", {})
        dual = d.get("dual")
        return cls(
            field=F,
            weight=w,
            S=tuple(d["S"]),
            S_prime=tuple(d["S_prime"]),
            case=str(d["case"]),
            rho=parse_rational(d["rho"]),
            N=int(d["N"]),
            n=int(d["n"]),
            eta_C=[int(x) for x in d["eta_C"]],
            eta_D=[int(x) for x in d["eta_D"]],
            wwe_C=_de_dist(d["wwe_C"]),
            wwe_D=_de_dist(d["wwe_D"]),
            witness_weight=wit.get("weight"),
            witness_C=wit.get("C"),
            witness_D=wit.get("D"),
            witness_source=wit.get("source", ""),
            forced=bool(d.get("forced", False)),
            notes=list(d.get("notes", [])),
            dual_wwe_C=_de_dist(dual["C"]) if dual else None,
            dual_wwe_D=_de_dist(dual["D"]) if dual else None,
            dual_degree=dual["degree"] if dual else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def _first_difference(a: dict, b: dict):
    for k in sorted(set(a) | set(b)):
        if a.get(k, 0) != b.get(k, 0):
            return k, a.get(k, 0), b.get(k, 0)
    return None


def _dual_prefixes(frame: OrbitFrame, w: WeightFn, eta_C, eta_D, degree, backend=None):
    from .enumerators import class_weights, dual_wwe, kravchuk, symmetrized_enumerator

    K = kravchuk(frame)
    ws = class_weights(w)
    size = frame.field.q**2
    a = dual_wwe(symmetrized_enumerator(frame, eta_C), K, size, ws, max_degree=degree, backend=backend)
    b = dual_wwe(symmetrized_enumerator(frame, eta_D), K, size, ws, max_degree=degree, backend=backend)
    return a, b


def build_certificate(
    w: WeightFn,
    rho=None,
    *,
    force: bool = False,
    subsets: tuple[Sequence[int], Sequence[int]] | None = None,
    full_dual: bool = False,
    dual_degree: int | None = None,
    N: int | None = None,
    backend: str | None = None,
) -> Certificate:
    """Run the whole construction for ``w``.

    With ``force`` a failing hypothesis becomes a note instead of an error,
    and the separating dual coefficient is searched for in the dual
    enumerators when the doubleton count does not distinguish the codes.
    """
    if not w.is_field:
        raise WeightError("construction needs a weight on a field")
    F = w.field
    notes: list[str] = []
    report = main_theorem_hypotheses(w)
    if not report.all_hold:
        bad = report.first_failure()
        if not force:
            raise HypothesisFailure(bad)
        notes += [f"hypothesis '{v.name}' fails: {v.detail}" for v in report.verdicts if not v.holds]
    if not report["nondegenerate"].holds:
        raise HypothesisFailure(report["nondegenerate"])

    frame = build_frame(F, w.H)
    W = build_A(frame, w)
    b, Winv = invert_A(frame, w)
    if subsets is not None:
        sel = Selection(tuple(sorted(subsets[0])), tuple(sorted(subsets[1])), "override", ())
    else:
        try:
            sel = select_subsets(frame, b)
        except ConstructionError as exc:
            if not force:
                raise
            l0, linf = frame.index(0, 0), frame.index(0, INF)
            sel = Selection(tuple(sorted((l0, frame.index(1, 0)))), tuple(sorted((l0, linf))), "forced", (1,))
            notes.append(f"{exc}; using S = {{l_0, alpha l_0}}, S' = {{l_0, l_inf}}")
    etaS = solve_eta(W, sel.S, inverse=Winv)
    etaT = solve_eta(W, sel.S_prime, inverse=Winv)
    f = f_rho(etaS, etaT)

    if rho is None:
        # a bounded subset size is always 2 here
        bounds = delta_bounds(Winv, 2)
        if f.is_zero():
            if not force:
                raise ConstructionError("f(rho) vanishes identically; this contradicts the hypotheses")
            notes.append("f(rho) vanishes identically; the doubleton count cannot separate the duals")
            rho = bounds.lo
        else:
            rho = choose_rho(bounds.lo, bounds.hi, f)
    rho = Fraction(rho)
    N, eta_C, eta_D, n = scale_and_build(etaS.evaluate(rho), etaT.evaluate(rho), N)

    wwe_C = weight_distribution(frame, eta_C, W)
    wwe_D = weight_distribution(frame, eta_D, W)
    if wwe_C != wwe_D:
        raise ConstructionError("primal weight distributions differ")  # pragma: no cover

    cert = Certificate(F, w, sel.S, sel.S_prime, sel.case, rho, N, n, eta_C, eta_D, wwe_C, wwe_D,
                       None, None, None, "", forced=force and bool(notes), notes=notes)

    doubletons_ok = report["unique_min_orbit"].holds and report["minus_one_in_H"].holds
    if doubletons_ok:
        dc = dual_small_weight_counts(frame, eta_C, w)
        dd = dual_small_weight_counts(frame, eta_D, w)
        cert.witness_weight, cert.witness_C, cert.witness_D = dc.weight, dc.count, dd.count
        cert.witness_source = "doubletons"
    if not cert.separates:
        if not force:
            raise ConstructionError("dual doubleton counts agree; this contradicts the hypotheses")
        deg = 2 * int(w.w_max)
        top = n * int(w.w_max)
        while True:
            a, bb = _dual_prefixes(frame, w, eta_C, eta_D, deg, backend)
            diff = _first_difference(a, bb)
            if diff is not None or deg >= top:
                break
            deg = min(top, 2 * deg)
        if diff is not None:
            cert.witness_weight, cert.witness_C, cert.witness_D = diff
            cert.witness_source = "dual enumerator"
        else:
            cert.notes.append("the dual enumerators agree; this pair does not separate")
    if full_dual or dual_degree is not None:
        a, bb = _dual_prefixes(frame, w, eta_C, eta_D, dual_degree, backend)
        cert.dual_wwe_C, cert.dual_wwe_D, cert.dual_degree = a, bb, dual_degree
    return cert


# ---------------------------------------------------------------- verification

@dataclass
class VerifyReport:
    checks: list[tuple[str, bool, str]] = dc_field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c[1]), None)

    def render(self) -> str:
        return "\n".join(f"{'ok  ' if ok else 'FAIL'} {name}{': ' + d if d else ''}" for name, ok, d in self.checks)


def _pair_matches(claim: tuple, got: tuple) -> bool:
    return claim == got or claim == got[::-1]


def verify_certificate(cert: Certificate, cap: int = 10**7, backend: str | None = None) -> VerifyReport:
    """Re-derive every claim from the field, the weight and the two eta vectors.

    Claims about the pair are accepted in either order, so swapping
    ``eta_C`` and ``eta_D`` does not invalidate a certificate.
    """
    from .enumerators import CapExceeded, brute_force_dual

    rep = VerifyReport()
    w, F = cert.weight, cert.field
    frame = build_frame(F, w.H)
    eC, eD = list(cert.eta_C), list(cert.eta_D)
    if not rep.add("shape", len(eC) == len(eD) == frame.tau, f"tau = {frame.tau}"):
        return rep
    if not rep.add("nonnegative", all(x >= 0 for x in eC + eD)):
        return rep
    W = build_A(frame, w)
    dC = weight_distribution(frame, eC, W)
    dD = weight_distribution(frame, eD, W)
    diff = _first_difference(dC, dD)
    if not rep.add("primal enumerators equal", diff is None,
                   "" if diff is None else f"A_{diff[0]}: {diff[1]} vs {diff[2]}"):
        return rep
    if not rep.add("equal length", sum(eC) == sum(eD) == cert.n, f"{sum(eC)}, {sum(eD)}, claimed {cert.n}"):
        return rep
    rep.add("primal enumerator matches claim", dC == cert.wwe_C and dD == cert.wwe_D)
    if frame.field.q**2 * cert.n <= 4 * cap:
        GC = generator_matrix(frame, eC)
        rep.add("primal brute force", brute_force_distribution(F, GC, w) == dC)

    wt = cert.witness_weight
    if wt is None:
        rep.add("witness present", False, "certificate records no separating coefficient")
        return rep
    if cert.witness_source == "doubletons":
        got = (dual_small_weight_counts(frame, eC, w).count, dual_small_weight_counts(frame, eD, w).count)
    else:
        a, b = _dual_prefixes(frame, w, eC, eD, int(wt), backend)
        got = (a.get(int(wt), 0), b.get(int(wt), 0))
    claim = (cert.witness_C, cert.witness_D)
    rep.add("witness matches claim", _pair_matches(claim, got), f"claimed {claim}, recomputed {got}")
    rep.add("duals differ", got[0] != got[1], f"A_{wt}: {got[0]} vs {got[1]}")

    a, b = _dual_prefixes(frame, w, eC, eD, int(wt), backend)
    rep.add("transform agrees with witness", _pair_matches(got, (a.get(int(wt), 0), b.get(int(wt), 0))))
    try:
        bfC = brute_force_dual(F, generator_matrix(frame, eC), w, cap=cap, backend=backend)
        bfD = brute_force_dual(F, generator_matrix(frame, eD), w, cap=cap, backend=backend)
        low = lambda d: {k: v for k, v in d.items() if k <= wt}  # noqa: E731
        rep.add("brute-force dual agrees", low(bfC) == a and low(bfD) == b)
    except CapExceeded as exc:
        rep.add("brute-force dual skipped", True, str(exc))
    if cert.dual_wwe_C is not None:
        fa, fb = _dual_prefixes(frame, w, eC, eD, cert.dual_degree, backend)
        rep.add("dual enumerators match claim", _pair_matches((cert.dual_wwe_C, cert.dual_wwe_D), (fa, fb)))
    return rep
