"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each workload runs through the public entry points with ``backend=`` set,
so the numbers include the CRT reconstruction the compiled path needs.
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from dualbreak.codes import build_certificate
from dualbreak.enumerators import (
    _class_table,
    class_weights,
    dual_wwe,
    kravchuk,
    parity_check_matrix,
    symmetrized_enumerator,
)
from dualbreak.finite_field import build_field
from dualbreak.kernels import available_backends, dual_class_histogram
from dualbreak.orbits import build_frame
from dualbreak.weights import WeightFn


def _f25_dual(rho, degree):
    F = build_field(5, 2, [2, 4, 1])
    w = WeightFn.from_coset_values(F, [3, 2])
    cert = build_certificate(w, rho, force=True)
    frame = build_frame(F, w.H)
    se = symmetrized_enumerator(frame, cert.eta_D)
    K, ws = kravchuk(frame), class_weights(w)
    return lambda backend: dual_wwe(se, K, F.q**2, ws, max_degree=degree, backend=backend)


def _f5_full_dual():
    F = build_field(5)
    w = WeightFn(F, [0, 1, 4, 4, 1])
    cert = build_certificate(w, Fraction(5, 4))
    frame = build_frame(F, w.H)
    se = symmetrized_enumerator(frame, cert.eta_D)
    K = kravchuk(frame)
    return lambda backend: dual_wwe(se, K, 25, class_weights(w), backend=backend)


def _histogram(q_field, n, k, seed=0):
    rng = random.Random(seed)
    F, t = q_field
    G = [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)]
    H = parity_check_matrix(F, G)
    r = len(H)
    scaled = [F.mul(a, H[row][col]) for row in range(r) for a in range(F.q) for col in range(n)]
    args = (scaled, F.add_table(), _class_table(F, t), r, n, F.q, t)
    return lambda backend: dual_class_histogram(*args, backend=backend)


def workloads(quick: bool):
    yield "F_5 full dual, n = 30", _f5_full_dual()
    yield "F_25 dual to degree 6, n = 62", _f25_dual(Fraction(5, 6), 6)
    if not quick:
        yield "F_25 dual to degree 40, n = 62", _f25_dual(Fraction(5, 6), 40)
    yield "histogram F_7, dual 7^4", _histogram((build_field(7), 3), 6, 2)
    if not quick:
        yield "histogram F_9, dual 9^5", _histogram((build_field(3, 2), 4), 7, 2)


def best_of(fn, backend, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the larger workloads")
    args = ap.parse_args(argv)
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the Python backend is timed")
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads(args.quick):
        row, results = [], []
        for b in backends:
            secs, res = best_of(fn, b, args.repeat)
            row.append(secs)
            results.append(res)
        if any(r != results[0] for r in results):
            raise SystemExit(f"backends disagree on {name}")
        line = f"{name:34s}" + "".join(f"{s:11.4f}s" for s in row)
        if len(row) > 1:
            line += f"{row[backends.index('python')] / row[backends.index('compiled')]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
