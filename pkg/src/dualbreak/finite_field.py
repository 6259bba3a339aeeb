"""Exact arithmetic in F_q = F_p[x]/(f) and in the residue rings Z/mZ.

Field elements are encoded as integers ``0 <= code < q``: the code of
``c0 + c1*x + ... + c_{l-1}*x^{l-1}`` is ``c0 + c1*p + ... + c_{l-1}*p^{l-1}``.
For ``l == 1`` the code is the residue itself, so ``F_p`` elements are just
``0..p-1``.  :meth:`FiniteField.coeffs` and :meth:`FiniteField.element`
convert between codes and coefficient vectors.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Sequence

from sympy import isprime

__all__ = [
    "FiniteField",
    "ResidueRing",
    "FieldError",
    "build_field",
    "trace",
    "discrete_log",
    "dot",
    "is_irreducible",
]

_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


# -- polynomials over F_p, coefficient lists low-to-high ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division of ``f`` by every monic polynomial of degree <= deg(f)/2."""
    f = _trim([c % p for c in f])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def _monic_candidates(p: int, l: int):
    # lexicographic on (c0, c1, ..., c_{l-1}) of x^l + ... + c0
    for low in product(range(p), repeat=l):
        yield list(low) + [1]


class FiniteField:
    """The field F_{p^l} presented as F_p[x]/(modulus) with a primitive element.

    Immutable after construction; log/exp tables are built eagerly.
    """

    def __init__(self, p: int, l: int, modulus: Sequence[int] | None, alpha: int):
        self.p = p
        self.l = l
        self.q = p**l
        self.modulus = tuple(modulus) if modulus is not None else None
        self.alpha = alpha
        q = self.q
        exp = [0] * (q - 1)
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            if log[x] != -1:
                raise FieldError(f"{self.fmt(alpha)} is not a primitive element")
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, alpha)
        if x != 1:
            raise FieldError(f"{self.fmt(alpha)} is not a primitive element")
        self._exp = exp
        self._log = log

    # ---- encodings
    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.l):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(out)

    def element(self, coeffs: Sequence[int] | int) -> int:
        if isinstance(coeffs, int):
            if self.l == 1:
                return coeffs % self.p
            coeffs = [coeffs]
        return _encode(coeffs, self.p, self.l)

    def fmt(self, x: int) -> str:
        return ",".join(str(c) for c in self.coeffs(x))

    def parse(self, text: str) -> int:
        return self.element([int(c) for c in text.split(",")])

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def units(self) -> range:
        return range(1, self.q)

    # ---- arithmetic
    def _mul_slow(self, a: int, b: int) -> int:
        if self.l == 1:
            return a * b % self.p
        p, l = self.p, self.l
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * l - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.element(_poly_mod(prod, self.modulus, p) if len(prod) > l else prod)

    @cached_property
    def _add_table(self) -> list[int] | None:
        if self.l == 1 or self.q > _ADD_TABLE_LIMIT:
            return None
        q = self.q
        return [self._add_digits(a, b) for a in range(q) for b in range(q)]

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.l):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += (da + db) % p * scale
            scale *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.l == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a * self.q + b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.l == 1:
            return -a % self.p
        return self.element([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % (self.q - 1)]

    def alpha_pow(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def log(self, x: int) -> int:
        return discrete_log(self, x)

    @property
    def one(self) -> int:
        return 1

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def add_table(self) -> list[int]:
        """Flat ``q*q`` addition table, ``table[a*q + b] = a + b``."""
        q = self.q
        if self.l == 1:
            return [(a + b) % q for a in range(q) for b in range(q)]
        return self._add_table or [self._add_digits(a, b) for a in range(q) for b in range(q)]

    def describe(self) -> dict:
        return {
            "p": self.p,
            "l": self.l,
            "modulus": list(self.modulus) if self.modulus is not None else None,
            "alpha": list(self.coeffs(self.alpha)),
        }

    def __repr__(self) -> str:
        if self.l == 1:
            return f"FiniteField(p={self.p}, alpha={self.alpha})"
        return f"FiniteField(p={self.p}, l={self.l}, modulus={list(self.modulus)}, alpha={self.fmt(self.alpha)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.l, self.modulus, self.alpha) == (other.p, other.l, other.modulus, other.alpha)

    def __hash__(self) -> int:
        return hash((self.p, self.l, self.modulus, self.alpha))


def _is_primitive(field_p: int, l: int, modulus, alpha: int) -> bool:
    try:
        FiniteField(field_p, l, modulus, alpha)
    except FieldError:
        return False
    return True


def build_field(
    p: int,
    l: int = 1,
    modulus: Sequence[int] | None = None,
    alpha: int | Sequence[int] | None = None,
) -> FiniteField:
    """Construct F_{p^l}.

    ``modulus`` is a monic coefficient list, low-to-high, of length ``l + 1``.
    Without it, the lexicographically smallest monic irreducible polynomial
    in which ``x`` is primitive is used.  ``alpha`` may be an element code or
    a coefficient vector; the default is ``x`` (or the smallest primitive root
    when ``l == 1``).
    """
    if not isprime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if l < 1:
        raise FieldError(f"degree must be positive, got {l}")

    if l == 1:
        if modulus is not None and len(modulus) not in (0, 2):
            raise FieldError("modulus for a prime field must have degree 1")
        if alpha is None:
            for a in range(1, p):
                if _is_primitive(p, 1, None, a):
                    return FiniteField(p, 1, None, a)
            raise FieldError(f"no primitive root mod {p}")  # pragma: no cover
        a = alpha if isinstance(alpha, int) else int(alpha[0])
        return FiniteField(p, 1, None, a % p)

    if modulus is not None:
        f = [int(c) % p for c in modulus]
        if len(f) != l + 1 or f[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {l}: {list(modulus)}")
        if not is_irreducible(f, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
        return _with_alpha(p, l, f, alpha)

    first_irreducible = None
    for f in _monic_candidates(p, l):
        if not is_irreducible(f, p):
            continue
        if first_irreducible is None:
            first_irreducible = f
        if alpha is None and _is_primitive(p, l, f, p):  # code p is x
            return FiniteField(p, l, f, p)
        if alpha is not None:
            return _with_alpha(p, l, f, alpha)
    if first_irreducible is None:  # pragma: no cover
        raise FieldError(f"internal error: no irreducible polynomial of degree {l} over F_{p}")
    return _with_alpha(p, l, first_irreducible, None)  # pragma: no cover


def _with_alpha(p: int, l: int, f: list[int], alpha) -> FiniteField:
    if alpha is None:
        candidates = [p] + [a for a in range(2, p**l) if a != p]
        for a in candidates:
            if _is_primitive(p, l, f, a):
                return FiniteField(p, l, f, a)
        raise FieldError("internal error: no primitive element")  # pragma: no cover
    a = alpha if isinstance(alpha, int) else _encode(alpha, p, l)
    return FiniteField(p, l, f, a)


def _encode(coeffs: Sequence[int], p: int, l: int) -> int:
    if len(coeffs) > l:
        raise FieldError(f"too many coordinates for F_{p**l}: {list(coeffs)}")
    code = 0
    for c in reversed(list(coeffs)):
        code = code * p + c % p
    return code


def trace(f: FiniteField, r: int) -> int:
    """Absolute trace r + r^p + ... + r^(p^(l-1)), returned as an integer in [0, p)."""
    total = 0
    x = r
    for _ in range(f.l):
        total = f.add(total, x)
        x = f.pow(x, f.p)
    if total >= f.p:
        raise FieldError(f"trace of {f.fmt(r)} left the prime field")  # pragma: no cover
    return total


def discrete_log(f: FiniteField, x: int) -> int:
    if x == 0:
        raise FieldError("discrete log of 0 is undefined")
    return f._log[x]


def dot(f: FiniteField, x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise FieldError(f"length mismatch: {len(x)} != {len(y)}")
    acc = 0
    for a, b in zip(x, y):
        acc = f.add(acc, f.mul(a, b))
    return acc


class ResidueRing:
    """Z/mZ with canonical representatives -m/2 < r <= m/2."""

    def __init__(self, m: int):
        if m < 2:
            raise FieldError(f"modulus must be >= 2, got {m}")
        self.m = m

    def canonical(self, r: int) -> int:
        r %= self.m
        return r - self.m if 2 * r > self.m else r

    @property
    def elements(self) -> range:
        return range(self.m)

    @cached_property
    def units(self) -> list[int]:
        from math import gcd

        return [u for u in range(1, self.m) if gcd(u, self.m) == 1]

    def mul(self, a: int, b: int) -> int:
        return a * b % self.m

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.m

    def __repr__(self) -> str:
        return f"ResidueRing({self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidueRing) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("Z/m", self.m))
