"""Reference values for the worked examples, and the comparisons behind
``dualbreak paper-example``.

Each ``check_*`` function regenerates the example from scratch and returns
a list of ``(quantity, expected, got)`` triples; a quantity matches when
the last two are equal.  The reference data is kept as plain text or small
literals so it can be read and diffed by eye.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .codes import (
    build_certificate,
    delta_bounds,
    dual_small_weight_counts,
    f_rho,
    select_subsets,
    solve_eta,
    weight_distribution,
)
from .cyclotomic import CyclotomicNumber
from .enumerators import (
    class_weights,
    dual_wwe,
    f9_maps,
    is_hamming_isometry,
    kravchuk,
    symmetrized_enumerator,
    trace_expansion_holds,
)
from .finite_field import build_field
from .linalg import ExactMatrix
from .orbits import build_frame
from .structured import build_A, invert_A, product_blocks
from .weights import WeightFn, circulant_matrix, correlations, main_theorem_hypotheses, t2_equality_roots

__all__ = ["EXAMPLES", "run_example", "Mismatch", "first_mismatch", "F5", "F9", "F25", "T2TABLE"]

Comparison = list[tuple[str, object, object]]

# ---------------------------------------------------------------- F_5, Euclidean weight

_F5_W = """
1 4 0 0 4 1 1 4 4 1 1 4
4 1 0 0 1 4 4 1 1 4 4 1
0 0 1 4 1 4 1 4 1 4 1 4
0 0 4 1 4 1 4 1 4 1 4 1
4 1 1 4 0 0 1 4 4 1 4 1
1 4 4 1 0 0 4 1 1 4 1 4
1 4 1 4 1 4 4 1 4 1 0 0
4 1 4 1 4 1 1 4 1 4 0 0
4 1 1 4 4 1 4 1 0 0 1 4
1 4 4 1 1 4 1 4 0 0 4 1
1 4 1 4 4 1 0 0 1 4 4 1
4 1 4 1 1 4 0 0 4 1 1 4
"""

# -75 W^-1
_F5_WINV75 = """
 1 -4  6  6 -4  1  1 -4 -4  1  1 -4
-4  1  6  6  1 -4 -4  1  1 -4 -4  1
 6  6  1 -4  1 -4  1 -4  1 -4  1 -4
 6  6 -4  1 -4  1 -4  1 -4  1 -4  1
-4  1  1 -4  6  6  1 -4 -4  1 -4  1
 1 -4 -4  1  6  6 -4  1  1 -4  1 -4
 1 -4  1 -4  1 -4 -4  1 -4  1  6  6
-4  1 -4  1 -4  1  1 -4  1 -4  6  6
-4  1  1 -4 -4  1 -4  1  6  6  1 -4
 1 -4 -4  1  1 -4  1 -4  6  6 -4  1
 1 -4  1 -4 -4  1  6  6  1 -4 -4  1
-4  1 -4  1  1 -4  6  6 -4  1  1 -4
"""


def _int_matrix(text: str) -> list[list[int]]:
    return [[int(x) for x in line.split()] for line in text.strip().splitlines()]


F5 = {
    "weight": [0, 1, 4, 4, 1],
    "H": [1, 4],
    "t": 2,
    "circulant": [[1, 4], [4, 1]],
    "det": -15,
    "c": (17, 8),
    "w_breve": 5,
    "W": _int_matrix(_F5_W),
    "Winv75": _int_matrix(_F5_WINV75),
    "b75": (6, 1, -4),
    "b_breve": -3,
    "c_b": (17, -8),
    "W2_blocks": (85, 40, 50),
    "Winv2_blocks_5625": (157, 32, -18),
    "S": (2, 3),
    "S_prime": (0, 2),
    # 75 * eta as (constant, rho coefficient)
    "eta75": [(15, -12)] * 2 + [(0, 3)] * 10,
    "eta75_prime": [(10, -7), (5, -2), (10, -7), (5, -2), (0, 3), (0, 3),
                    (5, -2), (-5, 8), (0, 3), (0, 3), (5, -2), (-5, 8)],
    "interval": (Fraction(5, 8), Fraction(5, 4)),
    "f": (100, -200, 100),
    "minus": {
        "rho": Fraction(5, 8),
        "n": 18,
        "eta_C": [4, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        "omega_C": [40, 40, 25, 25, 40, 40, 40, 40, 40, 40, 40, 40],
        "eta_D": [3, 2, 3, 2, 1, 1, 2, 0, 1, 1, 2, 0],
        "omega_D": [25, 40, 25, 40, 40, 40, 40, 40, 40, 40, 40, 40],
        "wwe": {0: 1, 25: 4, 40: 20},
        "A2": (24, 20),
        "se_C": {(18, 0, 0): 1, (8, 5, 5): 4, (2, 8, 8): 20},
        "se_D": {(18, 0, 0): 1, (5, 9, 4): 4, (2, 8, 8): 16, (5, 4, 9): 4},
        "dual_C": {0: 1, 2: 24, 3: 296, 4: 1900, 5: 10760},
        "dual_D": {0: 1, 2: 20, 3: 296, 4: 1956, 5: 10760},
    },
    "plus": {
        "rho": Fraction(5, 4),
        "n": 30,
        "eta_C": [0, 0, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
        "omega_C": [60, 60, 75, 75, 60, 60, 60, 60, 60, 60, 60, 60],
        "eta_D": [1, 2, 1, 2, 3, 3, 2, 4, 3, 3, 2, 4],
        "omega_D": [75, 60, 75, 60, 60, 60, 60, 60, 60, 60, 60, 60],
        "wwe": {0: 1, 60: 20, 75: 4},
        "A2": (60, 56),
        "se_C": {(30, 0, 0): 1, (6, 12, 12): 20, (0, 15, 15): 4},
        "se_D": {(30, 0, 0): 1, (3, 16, 11): 4, (6, 12, 12): 16, (3, 11, 16): 4},
        "dual_C": {0: 1, 2: 60, 3: 1260, 4: 17880, 5: 182772},
        "dual_D": {0: 1, 2: 56, 3: 1304, 4: 17720, 5: 182816},
    },
    # entries (a + b sqrt5) / 2
    "kravchuk": [[(2, 0), (4, 0), (4, 0)],
                 [(2, 0), (-1, 1), (-1, -1)],
                 [(2, 0), (-1, -1), (-1, 1)]],
}

# ---------------------------------------------------------------- F_9, t = 2

F9 = {
    "modulus": [2, 2, 1],  # x^2 - x - 1
    # alpha^i as (x, y) meaning x + y alpha
    "powers": [(1, 0), (0, 1), (1, 1), (1, 2), (2, 0), (0, 2), (2, 2), (2, 1)],
    "H": [(1, 0), (1, 1), (2, 0), (2, 2)],
    "order": [(0, 0), (1, 0), (0, 1), (1, 1), (1, 2), (2, 0), (0, 2), (2, 2), (2, 1)],
    "f": ["00", "11", "10", "21", "01", "22", "20", "12", "02"],
    "g": ["00", "01", "12", "10", "22", "02", "21", "20", "11"],
    "sides": (36, 36),
    "trace": {(1, 0): 2, (0, 1): 1, (1, 1): 0},  # 1, alpha, alpha^2
}

# ---------------------------------------------------------------- F_25, t = 2

F25 = {
    "modulus": [2, 4, 1],  # x^2 - x - 3
    "coset_values": [3, 2],  # 3 on H, 2 on beta H
    "delta": (Fraction(5, 6), Fraction(25, 24)),
    "low": {
        "rho": Fraction(5, 6),
        "n": 62,
        "wwe": {0: 1, 125: 24, 150: 600},
        "dual_C": {0: 1, 4: 360, 5: 1464, 6: 114120},
        "dual_D": {0: 1, 4: 360, 5: 864, 6: 115920},
    },
    "high": {
        "rho": Fraction(25, 24),
        "n": 250,
        "wwe": {0: 1, 600: 600, 625: 24},
        "dual_C": {0: 1, 4: 6000, 5: 15000, 6: 7116000},
        "dual_D": {0: 1, 4: 6000, 5: 14400, 6: 7117800},
    },
}

T2TABLE = {
    9: (Fraction(2), Fraction(1, 2)),
    25: (Fraction(3, 2), Fraction(2, 3)),
    49: (Fraction(4, 3), Fraction(3, 4)),
    81: (Fraction(5, 4), Fraction(4, 5)),
}


# ---------------------------------------------------------------- regeneration

def _zero_prefix(d: dict, top: int) -> dict:
    return {k: v for k, v in d.items() if k <= top and v}


def _sqrt5() -> CyclotomicNumber:
    # the quadratic Gauss sum zeta - zeta^2 - zeta^3 + zeta^4
    return CyclotomicNumber.from_group_ring(5, [0, 1, -1, -1, 1])


def check_f5() -> Comparison:
    g = F5
    F = build_field(5)
    w = WeightFn(F, g["weight"])
    rep = main_theorem_hypotheses(w)
    out: Comparison = [
        ("H", g["H"], list(w.H)),
        ("t", g["t"], w.t),
        ("det", g["det"], rep.det),
        ("c_0, c_1", g["c"], rep.correlations),
        ("w_breve", g["w_breve"], w.w_breve),
        ("all hypotheses hold", True, rep.all_hold),
    ]
    out.append(("circulant", ExactMatrix(g["circulant"]), circulant_matrix(w)))
    frame = build_frame(F, w.H)
    W = build_A(frame, w)
    out.append(("W", ExactMatrix(g["W"]), W))
    b, Winv = invert_A(frame, w)
    out.append(("-75 W^-1", ExactMatrix(g["Winv75"]), Winv.scale(-75)))
    out.append(("-75 b", g["b75"], tuple(-75 * b(r) for r in (0, 1, 2))))
    out.append(("-75 b_breve", g["b_breve"], -75 * b.breve))
    out.append(("5625 c_0(b, b), 5625 c_1(b, b)", g["c_b"], tuple(5625 * correlations(b, b, m) for m in (0, 1))))
    W2 = product_blocks(W, W)
    out.append(("W^2 blocks", g["W2_blocks"], (W2.diagonal[0, 0], W2.diagonal[0, 1], W2.off_diagonal)))
    Wi2 = product_blocks(Winv, Winv)
    out.append(("5625 W^-2 blocks", g["Winv2_blocks_5625"],
                tuple(5625 * x for x in (Wi2.diagonal[0, 0], Wi2.diagonal[0, 1], Wi2.off_diagonal))))
    sel = select_subsets(frame, b)
    out.append(("S, S'", (g["S"], g["S_prime"]), (sel.S, sel.S_prime)))
    e1 = solve_eta(W, sel.S, inverse=Winv)
    e2 = solve_eta(W, sel.S_prime, inverse=Winv)
    as_pairs = lambda e: [(75 * p, 75 * q) for p, q in zip(e.P, e.Q)]  # noqa: E731
    out.append(("75 eta", g["eta75"], as_pairs(e1)))
    out.append(("75 eta'", g["eta75_prime"], as_pairs(e2)))
    lo1, hi1 = e1.interval()
    lo2, hi2 = e2.interval()
    out.append(("nonnegativity interval", g["interval"], (max(lo1, lo2), min(hi1, hi2))))
    db = delta_bounds(Winv, 2)
    out.append(("global delta^(2)", g["interval"], (db.lo, db.hi)))
    f = f_rho(e1, e2, scale=75)
    out.append(("f(rho) coefficients", g["f"], (f.c2, f.c1, f.c0)))
    K = kravchuk(frame)
    r5 = _sqrt5()
    expect = [[(a + b * r5) * Fraction(1, 2) for a, b in row] for row in g["kravchuk"]]
    out.append(("Kravchuk", expect, K.entries()))
    ws = class_weights(w)
    for side in ("minus", "plus"):
        s = g[side]
        cert = build_certificate(w, s["rho"])
        out.append((f"{side}: n", s["n"], cert.n))
        out.append((f"{side}: eta_C", s["eta_C"], cert.eta_C))
        out.append((f"{side}: eta_D", s["eta_D"], cert.eta_D))
        out.append((f"{side}: omega_C", s["omega_C"], W @ cert.eta_C))
        out.append((f"{side}: omega_D", s["omega_D"], W @ cert.eta_D))
        out.append((f"{side}: wwe_C", s["wwe"], weight_distribution(frame, cert.eta_C, W)))
        out.append((f"{side}: wwe_D", s["wwe"], weight_distribution(frame, cert.eta_D, W)))
        A2 = tuple(dual_small_weight_counts(frame, e, w).count for e in (cert.eta_C, cert.eta_D))
        out.append((f"{side}: A_2 of the duals", s["A2"], A2))
        for name, eta in (("C", cert.eta_C), ("D", cert.eta_D)):
            se = symmetrized_enumerator(frame, eta)
            out.append((f"{side}: se_{name}", s[f"se_{name}"], dict(se.items())))
            dual = dual_wwe(se, K, F.q**2, ws, max_degree=5)
            out.append((f"{side}: dual wwe_{name} to y^5", s[f"dual_{name}"], _zero_prefix(dual, 5)))
    return out


def check_f9() -> Comparison:
    g = F9
    F = build_field(3, 2, g["modulus"])
    E = lambda xy: F.element(list(xy))  # noqa: E731
    out: Comparison = [
        ("alpha^i", g["powers"], [F.coeffs(F.alpha_pow(i)) for i in range(8)]),
    ]
    w = WeightFn.from_coset_values(F, [2, 1])
    out.append(("H", sorted(E(h) for h in g["H"]), sorted(w.H)))
    rep = main_theorem_hypotheses(w)
    bad = rep.first_failure()
    out.append(("failing hypothesis", "distinct_values", bad.name if bad else None))
    out.append(("both sides", g["sides"], tuple(v for _, v in rep.compared)))
    out.append(("nondegenerate", True, rep["nondegenerate"].holds))
    f, gmap = f9_maps(F)
    fmt = lambda m: ["".join(map(str, m[E(xy)])) for xy in g["order"]]  # noqa: E731
    out.append(("f table", g["f"], fmt(f)))
    out.append(("g table", g["g"], fmt(gmap)))
    out.append(("f is an isometry for (w_1, w_2) = (1, 2)", True, is_hamming_isometry(F, f, w)))
    swapped = WeightFn.from_coset_values(F, [1, 2])
    out.append(("g is an isometry for (w_1, w_2) = (2, 1)", True, is_hamming_isometry(F, gmap, swapped)))
    from .finite_field import trace

    out.append(("traces", g["trace"], {xy: trace(F, E(xy)) for xy in g["trace"]}))
    out.append(("trace expansion", True, trace_expansion_holds(F)))
    return out


def check_f25(full: bool = True) -> Comparison:
    g = F25
    F = build_field(5, 2, g["modulus"])
    w = WeightFn.from_coset_values(F, g["coset_values"])
    rep = main_theorem_hypotheses(w)
    bad = rep.first_failure()
    out: Comparison = [("failing hypothesis", "distinct_values", bad.name if bad else None)]
    frame = build_frame(F, w.H)
    _, Winv = invert_A(frame, w)
    db = delta_bounds(Winv, 2)
    out.append(("delta^(2)", g["delta"], (db.lo, db.hi)))
    sides = ("low", "high") if full else ("low",)
    K = kravchuk(frame)
    ws = class_weights(w)
    for side in sides:
        s = g[side]
        cert = build_certificate(w, s["rho"], force=True)
        out.append((f"{side}: n", s["n"], cert.n))
        out.append((f"{side}: wwe_C", s["wwe"], cert.wwe_C))
        out.append((f"{side}: wwe_D", s["wwe"], cert.wwe_D))
        for name, eta in (("C", cert.eta_C), ("D", cert.eta_D)):
            dual = dual_wwe(symmetrized_enumerator(frame, eta), K, F.q**2, ws, max_degree=6)
            out.append((f"{side}: dual wwe_{name} to t^6", s[f"dual_{name}"], _zero_prefix(dual, 6)))
    return out


def check_t2table() -> Comparison:
    return [(f"q = {q}", roots, t2_equality_roots(q)) for q, roots in sorted(T2TABLE.items())]


EXAMPLES: dict[str, Callable[[], Comparison]] = {
    "f5": check_f5,
    "f9": check_f9,
    "f25": check_f25,
    "t2table": check_t2table,
}


class Mismatch(AssertionError):
    pass


def first_mismatch(rows: Comparison):
    return next(((name, a, b) for name, a, b in rows if a != b), None)


def run_example(name: str) -> Comparison:
    try:
        fn = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return fn()
