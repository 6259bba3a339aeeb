"""Sparse multivariate polynomials with exact coefficients.

Terms live in a dict from exponent tuples to nonzero coefficients.  The
coefficient type is whatever supports ``+``, ``*`` and ``== 0``: ints,
Fractions or :class:`~dualbreak.cyclotomic.CyclotomicNumber`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import format_rational, parse_rational

__all__ = ["SparsePoly", "render_univariate", "univariate_from_dict"]


def _is_zero(c) -> bool:
    return c == 0


class SparsePoly:
    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], object] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong arity for {nvars} variables")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            acc[e] = acc[e] + c if e in acc else c
        self._terms = {e: c for e, c in acc.items() if not _is_zero(c)}

    # ---- constructors
    @classmethod
    def constant(cls, nvars: int, c=1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    # ---- access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e) -> object:
        return self._terms.get(tuple(e), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient_sum(self):
        return sum(self._terms.values(), 0)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # ---- arithmetic
    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def _check(self, other: "SparsePoly"):
        if other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return SparsePoly(self.nvars, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scale(self, c) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return SparsePoly(self.nvars, out)

    __rmul__ = scale

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def map_coefficients(self, f) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: f(c) for e, c in self._terms.items()})

    def specialize(self, shifts: Iterable[int]) -> "SparsePoly":
        """Substitute ``Z_i <- y^shifts[i]``; returns a univariate polynomial."""
        shifts = list(shifts)
        out: dict = {}
        for e, c in self._terms.items():
            d = sum(a * s for a, s in zip(e, shifts))
            out[(d,)] = out[(d,)] + c if (d,) in out else c
        return SparsePoly(1, out)

    # ---- text
    def dump(self) -> str:
        return "\n".join(f"[{','.join(map(str, e))}]: {_fmt(c)}" for e, c in self.items())

    @classmethod
    def parse(cls, text: str) -> "SparsePoly":
        terms = []
        nvars = None
        for line in text.strip().splitlines():
            lhs, rhs = line.split(":")
            e = tuple(int(x) for x in lhs.strip().strip("[]").split(","))
            nvars = len(e) if nvars is None else nvars
            terms.append((e, parse_rational(rhs)))
        if nvars is None:
            raise ValueError("cannot infer arity of an empty dump")
        return cls(nvars, terms)

    def to_pairs(self) -> list:
        """Sorted ``[exponent, coefficient]`` pairs with rationals as strings."""
        if self.nvars == 1:
            return [[e[0], _fmt(c)] for e, c in self.items()]
        return [[list(e), _fmt(c)] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, nvars: int, pairs) -> "SparsePoly":
        terms = []
        for e, c in pairs:
            terms.append(((e,) if nvars == 1 else tuple(e), parse_rational(c)))
        return cls(nvars, terms)

    def render(self, var: str = "y", names: list[str] | None = None) -> str:
        if self.nvars == 1:
            return render_univariate({e[0]: c for e, c in self._terms.items()}, var)
        names = names or [f"Z{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.items():
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            cs = _fmt(c)
            parts.append(mono if cs == "1" and mono else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {len(self)} terms)"


def _fmt(c) -> str:
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    return str(c)


def render_univariate(coeffs: Mapping[int, object], var: str = "y", limit: int | None = None) -> str:
    """``1 + 24y^2 + 296y^3``; with ``limit`` only the first terms, then ``+ ...``."""
    items = sorted((e, c) for e, c in coeffs.items() if c != 0)
    shown = items if limit is None else items[:limit]
    parts = []
    for e, c in shown:
        cs = _fmt(c)
        if e == 0:
            parts.append(cs)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            parts.append(mono if cs == "1" else f"{cs}{mono}")
    text = " + ".join(parts) if parts else "0"
    if limit is not None and len(items) > limit:
        text += " + ..."
    return text


def univariate_from_dict(coeffs: Mapping[int, object]) -> SparsePoly:
    return SparsePoly(1, {(e,): c for e, c in coeffs.items()})
