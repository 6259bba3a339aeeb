"""Run configuration: an INI file with ``[field]``, ``[weight]``,
``[construct]``, ``[scan]`` and ``[output]`` sections, plus the same
settings as command-line flags.  Flags override the file.

Example::

    [field]
    p = 5
    l = 2
    modulus = 2,4,1

    [weight]
    cosets = 3,2

    [construct]
    rho = 5/6
    force = true
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from sympy import isprime

from .finite_field import FiniteField, build_field
from .linalg import parse_rational
from .weights import WeightFn, hamming_weight, power_weight

__all__ = ["ConfigError", "RunConfig", "load_config", "parse_field", "parse_weight", "parse_range", "parse_primes"]


class ConfigError(ValueError):
    pass


# section -> {key in the file: RunConfig attribute}
_SCHEMA = {
    "field": {"p": "p", "l": "l", "modulus": "modulus", "alpha": "alpha"},
    "weight": {"table": "weight_table", "cosets": "weight_cosets", "name": "weight_name"},
    "construct": {
        "rho": "rho",
        "n_scale": "N",
        "subset_s": "subset_s",
        "subset_sprime": "subset_sprime",
        "force": "force",
        "full_dual": "full_dual",
        "dual_degree": "dual_degree",
        "cap": "cap",
    },
    "scan": {"primes": "primes", "ell": "ells", "jobs": "jobs", "checkpoint": "checkpoint", "format": "scan_format"},
    "output": {"out": "out"},
}


@dataclass
class RunConfig:
    p: int | None = None
    l: int = 1
    modulus: tuple[int, ...] | None = None
    alpha: tuple[int, ...] | None = None
    weight_table: tuple[Fraction, ...] | None = None
    weight_cosets: tuple[Fraction, ...] | None = None
    weight_name: str | None = None
    rho: Fraction | None = None
    N: int | None = None
    subset_s: tuple[int, ...] | None = None
    subset_sprime: tuple[int, ...] | None = None
    force: bool = False
    full_dual: bool = False
    dual_degree: int | None = None
    cap: int = 10**7
    primes: tuple[int, ...] | None = None
    ells: tuple[int, ...] | None = None
    jobs: int = 1
    checkpoint: str | None = None
    scan_format: str = "csv"
    out: str | None = None

    def merged(self, **overrides) -> "RunConfig":
        """Copy with every non-None override applied."""
        given = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(given) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown settings {sorted(unknown)}")
        cfg = replace(self, **given)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if sum(x is not None for x in (self.weight_table, self.weight_cosets, self.weight_name)) > 1:
            raise ConfigError("give the weight once: table, cosets or name")
        if (self.subset_s is None) != (self.subset_sprime is None):
            raise ConfigError("subset_s and subset_sprime go together")
        if self.rho is not None and self.rho <= 0:
            raise ConfigError("rho must be positive")
        if self.cap <= 0 or self.jobs <= 0:
            raise ConfigError("cap and jobs must be positive")
        if self.scan_format not in ("csv", "json"):
            raise ConfigError(f"scan format must be csv or json, not {self.scan_format!r}")

    def build_field(self) -> FiniteField:
        if self.p is None:
            raise ConfigError("no field given")
        try:
            return build_field(self.p, self.l, list(self.modulus) if self.modulus else None,
                               list(self.alpha) if self.alpha else None)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def build_weight(self, F: FiniteField | None = None) -> WeightFn:
        F = F or self.build_field()
        try:
            if self.weight_table is not None:
                return WeightFn(F, self.weight_table)
            if self.weight_cosets is not None:
                return WeightFn.from_coset_values(F, self.weight_cosets)
            if self.weight_name is not None:
                return named_weight(self.weight_name, F)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        raise ConfigError("no weight given")


def named_weight(name: str, F: FiniteField) -> WeightFn:
    """``hamming``, ``lee``, ``euclidean`` or ``power:ELL`` (prime fields for the last three)."""
    key = name.strip().lower()
    if key == "hamming":
        return hamming_weight(F)
    ell = {"lee": 1, "euclidean": 2}.get(key)
    if ell is None and key.startswith("power:"):
        ell = _int(key[6:], "power exponent")
    if ell is None:
        raise ConfigError(f"unknown weight name {name!r}")
    if F.l != 1:
        raise ConfigError(f"the {key} weight is defined on prime fields")
    return power_weight(F.p, ell).over_field(F)


# ---------------------------------------------------------------- value parsers

def _int(text: str, what: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"{what}: expected an integer, got {text!r}") from None


def _ints(text: str, what: str) -> tuple[int, ...]:
    parts = [s for s in str(text).replace(" ", "").split(",") if s]
    if not parts:
        raise ConfigError(f"{what}: empty list")
    return tuple(_int(s, what) for s in parts)


def _rationals(text: str, what: str) -> tuple[Fraction, ...]:
    parts = [s for s in str(text).replace(" ", "").split(",") if s]
    if not parts:
        raise ConfigError(f"{what}: empty list")
    try:
        return tuple(parse_rational(s) for s in parts)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{what}: bad rational in {text!r}") from None


def _bool(text: str, what: str) -> bool:
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{what}: expected true or false, got {text!r}")


def parse_range(text: str, what: str = "range") -> tuple[int, ...]:
    """``5..71``, ``5-71`` or a comma list, possibly mixed: ``5,7,11-13``."""
    out: list[int] = []
    for part in str(text).replace(" ", "").split(","):
        if not part:
            continue
        sep = ".." if ".." in part else ("-" if "-" in part[1:] else None)
        if sep:
            a, b = part.split(sep, 1)
            lo, hi = _int(a, what), _int(b, what)
            if lo > hi:
                raise ConfigError(f"{what}: empty range {part}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(_int(part, what))
    if not out:
        raise ConfigError(f"{what}: empty range")
    return tuple(sorted(set(out)))


def parse_primes(text: str) -> tuple[int, ...]:
    out = tuple(p for p in parse_range(text, "primes") if isprime(p))
    if not out:
        raise ConfigError(f"no primes in {text!r}")
    return out


def parse_field(text: str) -> dict:
    """``5``, ``5^2`` or ``5^2:2,4,1`` (modulus constant term first), optional ``:alpha``."""
    parts = str(text).strip().split(":")
    if len(parts) > 3 or not parts[0]:
        raise ConfigError(f"bad field spec {text!r}")
    pl = parts[0].split("^")
    out: dict = {"p": _int(pl[0], "field"), "l": _int(pl[1], "field") if len(pl) > 1 else 1}
    if len(pl) > 2:
        raise ConfigError(f"bad field spec {text!r}")
    if len(parts) > 1 and parts[1]:
        out["modulus"] = _ints(parts[1], "modulus")
    if len(parts) > 2 and parts[2]:
        out["alpha"] = _ints(parts[2], "alpha")
    return out


def parse_weight(text: str) -> dict:
    """``0,1,4,4,1`` (full table), ``cosets:3,2`` or a name such as ``euclidean``."""
    text = str(text).strip()
    if text.startswith("cosets:"):
        return {"weight_cosets": _rationals(text[7:], "weight")}
    if text and (text[0].isdigit() or text[0] == "-"):
        return {"weight_table": _rationals(text, "weight")}
    return {"weight_name": text}


_CONVERT = {
    "p": lambda v: _int(v, "p"),
    "l": lambda v: _int(v, "l"),
    "modulus": lambda v: _ints(v, "modulus"),
    "alpha": lambda v: _ints(v, "alpha"),
    "weight_table": lambda v: _rationals(v, "table"),
    "weight_cosets": lambda v: _rationals(v, "cosets"),
    "weight_name": str.strip,
    "rho": lambda v: _rationals(v, "rho")[0],
    "N": lambda v: _int(v, "n_scale"),
    "subset_s": lambda v: _ints(v, "subset_s"),
    "subset_sprime": lambda v: _ints(v, "subset_sprime"),
    "force": lambda v: _bool(v, "force"),
    "full_dual": lambda v: _bool(v, "full_dual"),
    "dual_degree": lambda v: _int(v, "dual_degree"),
    "cap": lambda v: _int(v, "cap"),
    "primes": parse_primes,
    "ells": lambda v: parse_range(v, "ell"),
    "jobs": lambda v: _int(v, "jobs"),
    "checkpoint": str.strip,
    "scan_format": lambda v: str(v).strip().lower(),
    "out": str.strip,
}


def load_config(text: str) -> RunConfig:
    """Parse INI text; unknown sections or keys are errors."""
    cp = configparser.ConfigParser(interpolation=None, default_section="__none__")
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    values = {}
    for section in cp.sections():
        keys = _SCHEMA.get(section)
        if keys is None:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in cp.items(section):
            attr = keys.get(key)
            if attr is None:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            values[attr] = _CONVERT[attr](raw)
    return RunConfig().merged(**values)
