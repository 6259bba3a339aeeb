"""Backend selection for the hot loops, plus the multi-modular driver.

The compiled extension is used when it imports; setting the environment
variable ``DUALBREAK_KERNELS=python`` forces the pure-Python reference.
Every public function also takes ``backend=`` to pick one explicitly.
"""

from __future__ import annotations

import os
from functools import lru_cache
from types import ModuleType

from sympy import prevprime

from . import _pykernels

__all__ = ["BACKEND", "available_backends", "get_backend", "expand_exact", "dual_class_histogram", "crt_primes"]

try:
    if os.environ.get("DUALBREAK_KERNELS", "").strip().lower() == "python":
        raise ImportError("compiled kernels disabled by DUALBREAK_KERNELS")
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get_backend(name: str | None = None) -> ModuleType:
    name = name or BACKEND
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this build")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


@lru_cache(maxsize=None)
def _prime(i: int) -> int:
    return prevprime(1 << 62 if i == 0 else _prime(i - 1))


def crt_primes(bound: int) -> list[int]:
    """Distinct primes below 2^62 whose product exceeds ``bound``."""
    out, prod = [], 1
    i = 0
    while prod <= bound:
        p = _prime(i)
        out.append(p)
        prod *= p
        i += 1
    return out


def _crt_vector(residues: list[list[int]], primes: list[int]) -> list[int]:
    # incremental Garner: x stays in [0, M) for the product M of primes seen so far
    x = list(residues[0])
    M = primes[0]
    for r, p in zip(residues[1:], primes[1:]):
        inv = pow(M % p, -1, p)
        x = [xi + M * ((ri - xi) * inv % p) for xi, ri in zip(x, r)]
        M *= p
    return x


def expand_exact(terms, forms, p: int, size: int, bound: int, backend: str | None = None) -> list[int]:
    """Exact nonnegative result of ``expand_forms``, given a bound on every entry.

    The pure-Python backend computes over the integers directly; the compiled
    one runs once per 62-bit prime and reconstructs by CRT.
    """
    impl = get_backend(backend)
    if impl.EXACT:
        return impl.expand_forms(terms, forms, p, 0, size)
    primes = crt_primes(bound)
    residues = [impl.expand_forms(terms, forms, p, m, size) for m in primes]
    return _crt_vector(residues, primes)


def dual_class_histogram(scaled, add, cls, r, n, q, t, backend: str | None = None) -> dict:
    return get_backend(backend).dual_class_histogram(scaled, add, cls, r, n, q, t)
