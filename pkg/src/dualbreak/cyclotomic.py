"""Exact arithmetic in Q(zeta_p) for a prime p.

Numbers are coefficient vectors in the basis ``1, zeta, ..., zeta^(p-2)``;
``zeta^(p-1)`` is rewritten as ``-(1 + zeta + ... + zeta^(p-2))`` whenever
it appears.  No complex floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import isprime

__all__ = ["CyclotomicNumber", "CyclotomicError"]


class CyclotomicError(ArithmeticError):
    pass


class CyclotomicNumber:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence):
        if not isprime(p):
            raise CyclotomicError(f"conductor {p} is not prime")
        if len(coeffs) != p - 1:
            raise CyclotomicError(f"expected {p - 1} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    # ---- constructors
    @classmethod
    def from_group_ring(cls, p: int, a: Sequence) -> "CyclotomicNumber":
        """The image of ``sum_k a[k] x^k`` under ``x -> zeta`` (``len(a) == p``)."""
        if len(a) != p:
            raise CyclotomicError(f"group-ring vector must have length {p}")
        top = Fraction(a[p - 1])
        return cls(p, [Fraction(a[k]) - top for k in range(p - 1)])

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CyclotomicNumber":
        a = [0] * p
        a[k % p] = 1
        return cls.from_group_ring(p, a)

    @classmethod
    def rational(cls, p: int, r) -> "CyclotomicNumber":
        return cls(p, [r] + [0] * (p - 2))

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise CyclotomicError(f"mixed conductors {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.p, other)
        return NotImplemented

    # ---- arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicNumber(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        prod = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[(i + j) % p] += a * b
        return CyclotomicNumber.from_group_ring(p, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise CyclotomicError("negative powers are not supported")
        out = CyclotomicNumber.rational(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    # ---- rationality
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self} is not rational")
        return self.coeffs[0]

    def conjugate(self, k: int) -> "CyclotomicNumber":
        """Apply the Galois automorphism ``zeta -> zeta^k``."""
        if k % self.p == 0:
            raise CyclotomicError("zeta -> 1 is not an automorphism")
        p = self.p
        a = [Fraction(0)] * p
        for i, c in enumerate(self.coeffs):
            a[i * k % p] += c
        return CyclotomicNumber.from_group_ring(p, a)

    def __str__(self) -> str:
        text = ""
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not text:
                text = body if c > 0 else f"-{body}"
            else:
                text += f" + {body}" if c > 0 else f" - {body}"
        return text or "0"

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.p}, {self})"
