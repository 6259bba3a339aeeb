from __future__ import annotations

from fractions import Fraction

import pytest

from dualbreak.config import (
    ConfigError,
    RunConfig,
    load_config,
    parse_field,
    parse_primes,
    parse_range,
    parse_weight,
)

F25_INI = """
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


def test_load_f25():
    cfg = load_config(F25_INI)
    assert (cfg.p, cfg.l, cfg.modulus) == (5, 2, (2, 4, 1))
    assert cfg.weight_cosets == (3, 2) and cfg.rho == Fraction(5, 6) and cfg.force
    F = cfg.build_field()
    assert F.q == 25
    w = cfg.build_weight(F)
    assert w.t == 2 and len(w.H) == 12


def test_scan_and_output_sections():
    cfg = load_config("[scan]\nprimes = 5..20\nell = 1-3\njobs = 2\nformat = JSON\n[output]\nout = x.json\n")
    assert cfg.primes == (5, 7, 11, 13, 17, 19) and cfg.ells == (1, 2, 3)
    assert (cfg.jobs, cfg.scan_format, cfg.out) == (2, "json", "x.json")


@pytest.mark.parametrize("text, msg", [
    ("[colour]\nred = 1\n", "unknown section"),
    ("[field]\nq = 5\n", "unknown key"),
    ("[field]\np = five\n", "expected an integer"),
    ("[construct]\nforce = maybe\n", "true or false"),
    ("[construct]\nrho = -1\n", "positive"),
    ("[construct]\nrho = 1/0\n", "bad rational"),
    ("[weight]\ntable = 0,1,4,4,1\nname = lee\n", "give the weight once"),
    ("[construct]\nsubset_s = 1,2\n", "go together"),
    ("[scan]\nformat = xml\n", "csv or json"),
    ("[scan]\njobs = 0\n", "positive"),
    ("no section header\n", "malformed"),
])
def test_config_errors(text, msg):
    with pytest.raises(ConfigError, match=msg):
        load_config(text)


def test_parse_range_forms():
    assert parse_range("5..9") == (5, 6, 7, 8, 9)
    assert parse_range("5-7, 11 ,3") == (3, 5, 6, 7, 11)
    assert parse_range("4") == (4,)
    for bad in ("9..5", "", "a..b"):
        with pytest.raises(ConfigError):
            parse_range(bad)


def test_parse_primes():
    assert parse_primes("5..30") == (5, 7, 11, 13, 17, 19, 23, 29)
    with pytest.raises(ConfigError):
        parse_primes("24..28")


def test_parse_field_and_weight():
    assert parse_field("5") == {"p": 5, "l": 1}
    assert parse_field("5^2:2,4,1") == {"p": 5, "l": 2, "modulus": (2, 4, 1)}
    assert parse_field("3^2:2,2,1:0,1")["alpha"] == (0, 1)
    for bad in ("", "5^2^3", "5:1:2:3"):
        with pytest.raises(ConfigError):
            parse_field(bad)
    assert parse_weight("0,1,4,4,1") == {"weight_table": (0, 1, 4, 4, 1)}
    assert parse_weight("cosets:3,2") == {"weight_cosets": (3, 2)}
    assert parse_weight("euclidean") == {"weight_name": "euclidean"}


def test_named_weights():
    cfg = RunConfig(p=5, weight_name="euclidean")
    assert list(cfg.build_weight().values) == [0, 1, 4, 4, 1]
    assert list(RunConfig(p=7, weight_name="lee").build_weight().values) == [0, 1, 2, 3, 3, 2, 1]
    assert list(RunConfig(p=5, weight_name="hamming").build_weight().values) == [0, 1, 1, 1, 1]
    assert RunConfig(p=11, weight_name="power:3").build_weight().values[2] == 8
    with pytest.raises(ConfigError, match="prime fields"):
        RunConfig(p=5, l=2, weight_name="lee").build_weight()
    with pytest.raises(ConfigError, match="unknown weight"):
        RunConfig(p=5, weight_name="manhattan").build_weight()


def test_build_errors():
    with pytest.raises(ConfigError, match="no field"):
        RunConfig().build_field()
    with pytest.raises(ConfigError, match="no weight"):
        RunConfig(p=5).build_weight()
    with pytest.raises(ConfigError):
        RunConfig(p=9).build_field()
    with pytest.raises(ConfigError):
        RunConfig(p=5, weight_table=(0, 1, 2)).build_weight()


def test_merged_overrides_and_validates():
    cfg = load_config(F25_INI)
    assert cfg.merged(rho=Fraction(25, 24), N=None).rho == Fraction(25, 24)
    assert cfg.merged(N=None).N is None
    with pytest.raises(ConfigError, match="unknown settings"):
        cfg.merged(colour="red")
    with pytest.raises(ConfigError):
        cfg.merged(cap=0)
