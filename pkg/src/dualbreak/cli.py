"""``dualbreak`` command line.

Exit status: 0 on success, 1 when the mathematics says no (a hypothesis
fails, a certificate does not verify, a golden value differs), 2 for
usage and configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .codes import Certificate, ConstructionError, HypothesisFailure, build_certificate, verify_certificate
from .config import ConfigError, RunConfig, load_config, parse_field, parse_primes, parse_range, parse_weight
from .enumerators import CapExceeded
from .finite_field import FiniteField
from .golden import EXAMPLES, first_mismatch, run_example
from .linalg import format_rational, parse_rational
from .polys import render_univariate
from .weights import (
    ScanRow,
    WeightError,
    circulant_matrix,
    main_theorem_hypotheses,
    scan_power_weights,
    scan_to_csv,
    scan_to_json,
)

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _field_name(F: FiniteField) -> str:
    if F.l == 1:
        return f"F_{F.p} (alpha = {F.alpha})"
    mod = " + ".join(
        (f"{c}" if i == 0 else (f"x^{i}" if c == 1 else f"{c}x^{i}")) for i, c in enumerate(F.modulus) if c
    )
    return f"F_{F.q} = F_{F.p}[x]/({mod}) (alpha = {F.fmt(F.alpha)})"


def _fmt_elems(F: FiniteField, xs) -> str:
    return "{" + ", ".join(F.fmt(x) for x in xs) + "}"


def _matrix_lines(M, indent: str = "  ") -> list[str]:
    cells = [[format_rational(x) for x in row] for row in M.rows]
    width = max(len(c) for row in cells for c in row)
    return [indent + " ".join(c.rjust(width) for c in row) for row in cells]


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        cfg = load_config(text)
    over: dict = {}
    if getattr(args, "field", None):
        over.update(parse_field(args.field))
    if getattr(args, "weight", None):
        over.update(parse_weight(args.weight))
        # a weight on the command line replaces one from the file
        cfg.weight_table = cfg.weight_cosets = cfg.weight_name = None
    if getattr(args, "rho", None):
        try:
            over["rho"] = parse_rational(args.rho)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad rho {args.rho!r}") from None
    for flag, attr in (("subset_s", "subset_s"), ("subset_sprime", "subset_sprime")):
        v = getattr(args, flag, None)
        if v:
            over[attr] = parse_range(v, flag)
    if getattr(args, "primes", None):
        over["primes"] = parse_primes(args.primes)
    if getattr(args, "ell", None):
        over["ells"] = parse_range(args.ell, "ell")
    for name in ("cap", "jobs", "checkpoint", "out", "dual_degree"):
        v = getattr(args, name, None)
        if v is not None:
            over[name] = v
    if getattr(args, "n_scale", None) is not None:
        over["N"] = args.n_scale
    if getattr(args, "format", None):
        over["scan_format"] = args.format
    if getattr(args, "force", False):
        over["force"] = True
    if getattr(args, "full_dual", False):
        over["full_dual"] = True
    return cfg.merged(**over)


# ---------------------------------------------------------------- verbs

def cmd_analyze(cfg: RunConfig, out) -> int:
    F = cfg.build_field()
    w = cfg.build_weight(F)
    rep = main_theorem_hypotheses(w)
    print(f"field:   {_field_name(F)}", file=out)
    print(f"weight:  {' '.join(format_rational(v) for v in w.values)}", file=out)
    print(f"H = {_fmt_elems(F, rep.H)}  (|H| = {len(rep.H)}, t = {rep.t})", file=out)
    print("circulant:", file=out)
    for line in _matrix_lines(circulant_matrix(w)):
        print(line, file=out)
    print(f"det = {format_rational(rep.det)}", file=out)
    print(f"w_breve = {format_rational(rep.w_breve)}", file=out)
    print("correlations: " + ", ".join(f"c_{m} = {format_rational(c)}" for m, c in enumerate(rep.correlations)),
          file=out)
    print("hypotheses:", file=out)
    width = max(len(v.name) for v in rep.verdicts)
    for v in rep.verdicts:
        print(f"  {v.name.ljust(width)}  {'holds' if v.holds else 'FAILS'}  {v.detail}", file=out)
    if rep.all_hold:
        print("all hypotheses hold", file=out)
        return EXIT_OK
    bad = rep.first_failure()
    print(f"hypothesis '{bad.name}' fails", file=out)
    return EXIT_MATH


def _summarize(cert: Certificate, out) -> None:
    print(f"S = {list(cert.S)}  S' = {list(cert.S_prime)}  (case {cert.case})", file=out)
    print(f"rho = {format_rational(cert.rho)}  N = {cert.N}  n = {cert.n}", file=out)
    print(f"eta_C = {cert.eta_C}", file=out)
    print(f"eta_D = {cert.eta_D}", file=out)
    print(f"wwe_C = {render_univariate(cert.wwe_C)}", file=out)
    print(f"wwe_D = {render_univariate(cert.wwe_D)}", file=out)
    if cert.witness_weight is not None:
        print(f"dual A_{cert.witness_weight} ({cert.witness_source}): {cert.witness_C} vs {cert.witness_D}", file=out)
    if cert.dual_wwe_C is not None:
        print(f"dual wwe_C = {render_univariate(cert.dual_wwe_C, limit=6)}", file=out)
        print(f"dual wwe_D = {render_univariate(cert.dual_wwe_D, limit=6)}", file=out)
        keys = sorted(set(cert.dual_wwe_C) | set(cert.dual_wwe_D))
        diff = next((k for k in keys if cert.dual_wwe_C.get(k, 0) != cert.dual_wwe_D.get(k, 0)), None)
        if diff is None:
            print("dual enumerators agree", file=out)
        else:
            print(f"first differing dual coefficient: y^{diff}: "
                  f"{cert.dual_wwe_C.get(diff, 0)} vs {cert.dual_wwe_D.get(diff, 0)}", file=out)
    for note in cert.notes:
        print(f"note: {note}", file=out)


def cmd_construct(cfg: RunConfig, out) -> int:
    F = cfg.build_field()
    w = cfg.build_weight(F)
    subsets = (cfg.subset_s, cfg.subset_sprime) if cfg.subset_s is not None else None
    started = time.time()
    try:
        cert = build_certificate(
            w,
            cfg.rho,
            force=cfg.force,
            subsets=subsets,
            full_dual=cfg.full_dual,
            dual_degree=cfg.dual_degree,
            N=cfg.N,
        )
    except HypothesisFailure as exc:
        print(f"hypothesis '{exc.verdict.name}' fails: {exc.verdict.detail}", file=out)
        print("rerun with --force to attempt the construction anyway", file=out)
        return EXIT_MATH
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=out)
        return EXIT_MATH
    _summarize(cert, out)
    if cfg.out:
        _atomic_write(cfg.out, cert.to_json())
        meta = {"version": __version__, "elapsed_s": round(time.time() - started, 3), "created": time.time()}
        _atomic_write(f"{cfg.out}.meta.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")
        print(f"certificate written to {cfg.out}", file=out)
    else:
        out.write(cert.to_json())
    return EXIT_OK if cert.separates else EXIT_MATH


def cmd_verify(path: str, cfg: RunConfig, out) -> int:
    try:
        cert = Certificate.from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        print(f"malformed certificate: {exc!r}", file=out)
        return EXIT_MATH
    try:
        rep = verify_certificate(cert, cap=cfg.cap)
    except CapExceeded as exc:  # pragma: no cover - verify catches these
        print(str(exc), file=out)
        return EXIT_MATH
    print(rep.render(), file=out)
    if rep.ok:
        print("certificate verifies", file=out)
        return EXIT_OK
    name, _, detail = rep.first_failure()
    print(f"verification failed at '{name}': {detail}", file=out)
    return EXIT_MATH


def _show(v) -> str:
    """Compact rendering of a golden quantity; long values are elided."""
    if isinstance(v, Fraction):
        text = str(v)
    elif isinstance(v, (tuple, list)) and all(isinstance(x, (int, Fraction)) for x in v):
        text = "(" + ", ".join(str(x) for x in v) + ")"
    else:
        text = str(v)
    return text if len(text) <= 60 else ""


def cmd_paper_example(name: str, out) -> int:
    names = sorted(EXAMPLES) if name == "all" else [name]
    status = EXIT_OK
    for nm in names:
        if nm not in EXAMPLES:
            raise UsageError(f"unknown example {nm!r}; choose from {', '.join(sorted(EXAMPLES))} or all")
        rows = run_example(nm)
        for qty, expected, got in rows:
            shown = _show(got)
            print(f"{nm}: {'ok  ' if expected == got else 'FAIL'} {qty}{': ' + shown if shown else ''}", file=out)
        bad = first_mismatch(rows)
        if bad is None:
            print(f"{nm}: all {len(rows)} quantities match", file=out)
        else:
            print(f"{nm}: first mismatch in '{bad[0]}': expected {bad[1]!r}, got {bad[2]!r}", file=out)
            status = EXIT_MATH
    return status


def _load_checkpoint(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        return {}
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
        rows = [ScanRow.from_dict(d) for d in data["rows"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"unreadable checkpoint {path}: {exc}") from None
    return {(r.p, r.ell): r for r in rows}


def cmd_scan(cfg: RunConfig, out, err) -> int:
    if cfg.primes is None or cfg.ells is None:
        raise ConfigError("scan needs --primes and --ell")
    cache = _load_checkpoint(cfg.checkpoint) if cfg.checkpoint else {}
    try:
        rows = scan_power_weights(cfg.primes, cfg.ells, jobs=cfg.jobs, cache=cache)
    except WeightError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.checkpoint:
        merged = {**cache, **{(r.p, r.ell): r for r in rows}}
        payload = {"rows": [merged[k].as_dict() for k in sorted(merged)]}
        _atomic_write(cfg.checkpoint, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    fresh = len({(r.p, r.ell) for r in rows} - set(cache))
    print(f"scan: {len(rows)} cells, {fresh} computed, {len(rows) - fresh} from checkpoint", file=err)
    text = scan_to_csv(rows) if cfg.scan_format == "csv" else scan_to_json(rows)
    if cfg.out:
        _atomic_write(cfg.out, text)
    else:
        out.write(text)
    bad = [r for r in rows if r.nondegenerate is False]
    return EXIT_MATH if bad else EXIT_OK


# ---------------------------------------------------------------- parser

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dualbreak", description="Code pairs whose dual weight enumerators differ.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def common(p, weight=True):
        p.add_argument("--config", help="INI file with [field], [weight], ... sections")
        if weight:
            p.add_argument("--field", help="p, p^l or p^l:m0,m1,...[:alpha]")
            p.add_argument("--weight", help="value table 0,1,4,4,1, cosets:3,2 or a name (euclidean, lee, power:3)")

    a = sub.add_parser("analyze", help="check the hypotheses for a weight")
    common(a)

    c = sub.add_parser("construct", help="build and certify a code pair")
    common(c)
    c.add_argument("--rho", help="rational such as 5/8; default is the lower endpoint")
    c.add_argument("--subset-s", dest="subset_s", help="representative indices for S, e.g. 2,3")
    c.add_argument("--subset-sprime", dest="subset_sprime", help="representative indices for S'")
    c.add_argument("--n-scale", dest="n_scale", type=int, help="scale factor N (a multiple of the minimal one)")
    c.add_argument("--full-dual", action="store_true", help="also compute both dual enumerators in full")
    c.add_argument("--dual-degree", dest="dual_degree", type=int, help="truncate the full dual enumerators")
    c.add_argument("--force", action="store_true", help="continue past failing hypotheses")
    c.add_argument("--out", help="certificate path (stdout if omitted)")

    v = sub.add_parser("verify", help="re-check a certificate from its eta vectors")
    v.add_argument("certificate")
    v.add_argument("--cap", type=int, help="largest dual size enumerated by brute force")
    common(v, weight=False)

    e = sub.add_parser("paper-example", help="regenerate a worked example and compare")
    e.add_argument("name", help=f"one of {', '.join(sorted(EXAMPLES))}, or all")

    s = sub.add_parser("scan", help="scan power weights over prime fields")
    common(s, weight=False)
    s.add_argument("--primes", help="e.g. 5..71 or 5,7,11")
    s.add_argument("--ell", help="e.g. 1..6")
    s.add_argument("--jobs", type=int)
    s.add_argument("--checkpoint", help="JSON cache of finished cells, updated atomically")
    s.add_argument("--format", choices=("csv", "json"))
    s.add_argument("--out")
    return ap


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.verb == "paper-example":
            return cmd_paper_example(args.name, out)
        cfg = _config_from_args(args)
        if args.verb == "analyze":
            return cmd_analyze(cfg, out)
        if args.verb == "construct":
            return cmd_construct(cfg, out)
        if args.verb == "verify":
            return cmd_verify(args.certificate, cfg, out)
        return cmd_scan(cfg, out, err)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except WeightError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
