from __future__ import annotations

import random

import pytest

from dualbreak import _pykernels
from dualbreak.kernels import (
    BACKEND,
    _crt_vector,
    available_backends,
    crt_primes,
    expand_exact,
    get_backend,
)

compiled_only = pytest.mark.skipif("compiled" not in available_backends(), reason="compiled kernels not built")


def _naive(terms, forms, p, size):
    """Direct expansion with dict polynomials in y and x mod x^p - 1."""
    out = {}
    for coef, exps in terms:
        acc = {(0, 0): 1}
        for form, e in zip(forms, exps):
            for _ in range(e):
                nxt = {}
                for (d, k), a in acc.items():
                    for s, vec in form:
                        if d + s >= size:
                            continue
                        for k2, v in enumerate(vec):
                            if v:
                                key = (d + s, (k + k2) % p)
                                nxt[key] = nxt.get(key, 0) + a * v
                acc = nxt
        for key, a in acc.items():
            out[key] = out.get(key, 0) + coef * a
    flat = [0] * (size * p)
    for (d, k), a in out.items():
        flat[d * p + k] += a
    return flat


def _random_case(rng, top=9):
    p = rng.choice([2, 3, 5, 7])
    nforms = rng.randint(1, 3)
    forms = [
        [(rng.randint(0, 3), [rng.randint(0, 3) for _ in range(p)]) for _ in range(rng.randint(1, 3))]
        for _ in range(nforms)
    ]
    terms = [(rng.randint(1, 5), [rng.randint(0, top) for _ in range(nforms)]) for _ in range(rng.randint(1, 3))]
    size = rng.randint(1, 14)
    return terms, forms, p, size


def test_python_kernel_matches_naive():
    rng = random.Random(0)
    for i in range(150):
        terms, forms, p, size = _random_case(rng, 9 if i % 2 else 80)
        assert _pykernels.expand_forms(terms, forms, p, 0, size) == _naive(terms, forms, p, size)


@compiled_only
def test_compiled_kernel_matches_python_modulo_primes():
    rng = random.Random(1)
    comp = get_backend("compiled")
    for i in range(150):
        terms, forms, p, size = _random_case(rng, 9 if i % 2 else 80)
        exact = _pykernels.expand_forms(terms, forms, p, 0, size)
        for m in crt_primes(10**30):
            assert comp.expand_forms(terms, forms, p, m, size) == [x % m for x in exact]


@compiled_only
def test_histograms_agree():
    from dualbreak.enumerators import _class_table, parity_check_matrix
    from dualbreak.finite_field import build_field

    rng = random.Random(2)
    for F, t in ((build_field(5), 2), (build_field(3, 2), 4), (build_field(7), 3)):
        G = [[rng.randrange(F.q) for _ in range(6)] for _ in range(2)]
        H = parity_check_matrix(F, G)
        r, n, q = len(H), 6, F.q
        scaled = [F.mul(a, H[row][col]) for row in range(r) for a in range(q) for col in range(n)]
        args = (scaled, F.add_table(), _class_table(F, t), r, n, q, t)
        assert get_backend("compiled").dual_class_histogram(*args) == _pykernels.dual_class_histogram(*args)


def test_use_squaring_threshold():
    assert not _pykernels.use_squaring(1, 3, 10)
    assert not _pykernels.use_squaring(4, 2, 100)
    assert _pykernels.use_squaring(2000, 3, 50)


def test_expand_exact_every_backend_large_values(backend):
    rng = random.Random(3)
    terms, forms, p, size = _random_case(rng)
    terms = [(10**20 + c, e) for c, e in terms]
    exact = _pykernels.expand_forms(terms, forms, p, 0, size)
    bound = max(exact) + 1
    assert expand_exact(terms, forms, p, size, bound, backend=backend) == exact


def test_crt_helpers():
    primes = crt_primes(10**40)
    prod = 1
    for q in primes:
        prod *= q
    assert prod > 10**40 and len(set(primes)) == len(primes)
    xs = [0, 1, 10**39, 12345678901234567890123]
    assert _crt_vector([[x % q for x in xs] for q in primes], primes) == xs


def test_backend_selection():
    assert BACKEND in available_backends()
    assert get_backend("python") is _pykernels
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_environment_override():
    import os
    import subprocess
    import sys

    env = dict(os.environ, DUALBREAK_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "import dualbreak; print(dualbreak.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_benchmark_quick_run(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--quick", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "F_5 full dual" in out and "disagree" not in out
