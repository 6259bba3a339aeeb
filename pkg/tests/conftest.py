from __future__ import annotations

import random

import pytest

from dualbreak.finite_field import build_field
from dualbreak.kernels import available_backends
from dualbreak.weights import WeightFn, main_theorem_hypotheses

# criterion number -> (name, passed, seconds); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, ok, secs = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {name} ({secs:.1f} s)")


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


def random_full_rank(F, n: int, rng: random.Random, k: int = 2) -> list[list[int]]:
    """A k x n generator matrix over F of rank k."""
    from dualbreak.enumerators import _rref

    while True:
        G = [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)]
        if len(_rref(F, G)[1]) == k:
            return G


def random_good_weight(rng: random.Random, primes=(5, 7, 11), top: int = 9) -> WeightFn:
    """A random integer weight with values in 1..top meeting every hypothesis."""
    while True:
        p = rng.choice(primes)
        F = build_field(p)
        # -1 in H needs |H| = (p-1)/t even; H proper needs t > 1
        ts = [t for t in range(2, p) if (p - 1) % t == 0 and ((p - 1) // t) % 2 == 0]
        t = rng.choice(ts)
        w = WeightFn.from_coset_values(F, [rng.randint(1, top) for _ in range(t)])
        if main_theorem_hypotheses(w).all_hold:
            return w


@pytest.fixture
def f5_euclid():
    F = build_field(5)
    return WeightFn(F, [0, 1, 4, 4, 1])


@pytest.fixture
def f25_weight():
    F = build_field(5, 2, [2, 4, 1])
    return WeightFn.from_coset_values(F, [3, 2])
