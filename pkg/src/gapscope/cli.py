"""Batch command-line entry point.

Subcommands: gaps, identity, largevalues, perron, verify, optimize-nu,
report.  Every run writes a manifest echoing its full effective options;
`report --manifest <file>` re-dispatches from a manifest and reproduces the
outputs byte-for-byte.

Exit codes: 0 success, 1 usage, 2 capacity, 3 verification failure.
Numeric literals accept scientific notation (1e6) and rationals (9/5).
`GAPSCOPE_THREADS` overrides --threads; a --config file of key=value lines
supplies defaults that the command line overrides.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import CapacityError
from .claims import parse_ledger, verify_claim
from .ledger import builtin_ledger
from .reports import (
    summary_dict,
    write_gap_csv,
    write_json,
    write_manifest,
    write_table_csv,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_VERIFICATION = 3

GAPS_DEFAULT_LIMIT = 10**9


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit-code contract: usage errors are 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def parse_int_literal(text: str) -> int:
    """Integer literals, allowing 1e6-style scientific notation."""
    t = str(text).strip()
    try:
        return int(t)
    except ValueError:
        v = float(t)
        if v != int(v):
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
        return int(v)


def parse_fraction_literal(text: str) -> Fraction:
    t = str(text).strip()
    if "/" in t:
        num, den = t.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(t)


def _limits_arg(text: str) -> list[int]:
    return [parse_int_literal(t) for t in str(text).split(",")]


def load_config_file(path: str) -> dict:
    out = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


# ---------------------------------------------------------------------------
# Command implementations (each takes resolved options, returns exit code)
# ---------------------------------------------------------------------------

def cmd_gaps(opt: dict) -> int:
    from . import primes

    limits = sorted(set(opt["limits"]))
    ceiling = opt["ceiling"]
    if not opt["allow_large"]:
        over = [n for n in limits if n > GAPS_DEFAULT_LIMIT]
        if over:
            print(
                f"limit {over[0]} beyond desk scale {GAPS_DEFAULT_LIMIT}; "
                "pass --allow-large to attempt it",
                file=sys.stderr,
            )
            return EXIT_CAPACITY
    out = Path(opt["out"])
    try:
        rows = primes.max_gap_table(limits, ceiling=ceiling)
        summaries = primes.gap_sweep(limits, ceiling=ceiling)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    write_table_csv(out / "max_gap_table.csv", rows)
    write_json(out / "gap_summaries.json", [summary_dict(s) for s in summaries])
    if opt["stream_csv"]:
        n = write_gap_csv(out / "gaps.csv", primes.iter_gaps(min(limits[-1], opt["stream_limit"])))
        print(f"wrote {n} gap rows")
    for N, g, r in rows:
        print(f"N={N}: max gap {g}, log ratio {r:.2f}")
    return EXIT_OK


def cmd_identity(opt: dict) -> int:
    from . import identity

    x, k = opt["x"], opt["k"]
    cfg = identity.make_config(x, k)
    residuals = identity.identity_residuals(cfg)
    report = {
        "x": x,
        "k": k,
        "mobius_cutoff": cfg.mobius_cutoff,
        "window": [x + 1, 3 * x],
        "max_residual": float(residuals.max()),
        "tolerance": identity.EXACTNESS_TOL,
        "exact": bool(residuals.max() < identity.EXACTNESS_TOL),
    }
    out = Path(opt["out"])
    write_json(out / "identity_report.json", report)
    if opt["dump_factorizations"]:
        try:
            dump = [f.as_dict() for f in identity.enumerate_factorizations(cfg)]
            write_json(out / "factorizations.json", dump)
        except CapacityError as exc:
            print(f"capacity: {exc}", file=sys.stderr)
            return EXIT_CAPACITY
    print(f"identity x={x} k={k}: max residual {report['max_residual']:.3e}")
    return EXIT_OK if report["exact"] else EXIT_VERIFICATION


def cmd_largevalues(opt: dict) -> int:
    from .experiments import run_large_value_suite

    suite = run_large_value_suite(opt["experiments"], opt["seed"], opt["slack"])
    rows = [c.as_dict() for c in suite["cells"]]
    write_json(Path(opt["out"]) / "largevalues_report.json", {
        "seed": suite["seed"],
        "n_cells": suite["n_cells"],
        "sandwich_ok": suite["sandwich_ok"],
        "montgomery_ok": suite["montgomery_ok"],
        "worst_montgomery_ratio": suite["worst_montgomery_ratio"],
        "slack": suite["slack"],
        "cells": rows,
    })
    print(
        f"{suite['n_cells']} cells; sandwich {'ok' if suite['sandwich_ok'] else 'VIOLATED'}; "
        f"mean-value ratio max {suite['worst_montgomery_ratio']:.4f} (slack {suite['slack']:g})"
    )
    ok = suite["sandwich_ok"] and suite["montgomery_ok"]
    return EXIT_OK if ok else EXIT_VERIFICATION


_FACTOR_KINDS = ("unit", "log", "mobius", "singleton")


def _parse_factors(spec: str):
    from .dirichlet import log_factor, mobius_factor, singleton_factor, unit_factor

    out = []
    for part in spec.split(","):
        part = part.strip()
        if part == "singleton":
            out.append(singleton_factor())
            continue
        kind, _, n = part.partition(":")
        if kind not in _FACTOR_KINDS or not n:
            raise ValueError(f"bad factor spec {part!r} (e.g. unit:8, mobius:16, singleton)")
        mk = {"unit": unit_factor, "log": log_factor, "mobius": mobius_factor}[kind]
        out.append(mk(int(n)))
    return out


def cmd_perron(opt: dict) -> int:
    from .perron import make_perron_params, perron_window

    factors = _parse_factors(opt["factors"])
    params = make_perron_params(
        float(opt["y"]), float(opt["tau"]),
        T0=float(opt["T0"]) if opt["T0"] is not None else None,
    )
    rep = perron_window(params, factors, gauss_order=opt["gauss_order"])
    write_json(Path(opt["out"]) / "perron_report.json", rep.as_dict())
    print(
        f"y={params.y:g} tau={params.tau:g} T0={params.T0:g}: "
        f"estimate {rep.estimate:.6f} direct {rep.direct:.6f} "
        f"residual {rep.residual:.3e} (envelope constant {rep.implied_constant:.3e})"
    )
    return EXIT_OK


def cmd_verify(opt: dict) -> int:
    claims = (
        parse_ledger(Path(opt["ledger"]).read_text(encoding="utf-8"))
        if opt["ledger"]
        else builtin_ledger()
    )
    threads = max(1, opt["threads"])
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(verify_claim, claims))
    else:
        verdicts = [verify_claim(c) for c in claims]
    failures = [v for v in verdicts if not v.holds]
    report = {
        "claims": len(claims),
        "holds": len(claims) - len(failures),
        "failures": [v.claim_id for v in failures],
        "verdicts": [
            {"id": v.claim_id, "holds": v.holds, "certificate": v.certificate}
            for v in verdicts
        ],
    }
    write_json(Path(opt["out"]) / "verdicts.json", report)
    for v in verdicts:
        if not v.holds:
            ce = v.certificate.get("counterexample")
            where = (
                f" at sigma={ce['sigma']}, mu={ce['mu']}"
                f" (lhs {ce['lhs_value']} > rhs {ce['rhs_value']})"
                if isinstance(ce, dict) else ""
            )
            print(f"FAIL {v.claim_id}{where}")
    print(f"{report['holds']}/{report['claims']} claims hold")
    return EXIT_OK if not failures else EXIT_VERIFICATION


def cmd_optimize_nu(opt: dict) -> int:
    from .nu import optimize_nu

    res = optimize_nu(opt["res"], threads=max(1, opt["threads"]))
    payload = res.as_dict()
    payload["grid"] = [
        {"sigma": str(s), "mu": str(m), "nu": str(v)} for s, m, v in res.grid
    ]
    write_json(Path(opt["out"]) / "nu_profile.json", payload)
    print(
        f"nu* = {res.nu_star} ({float(res.nu_star):.6f}) at sigma={res.argmax[0]}, "
        f"mu={res.argmax[1]}"
    )
    if res.below_floor:
        print("warning: optimum fell below the configured floor 29/120")
    return EXIT_OK


def cmd_report(opt: dict) -> int:
    manifest = json.loads(Path(opt["manifest"]).read_text(encoding="utf-8"))
    command = manifest["command"]
    options = dict(manifest["options"])
    if opt["out"] is not None:
        options["out"] = opt["out"]
    handler = _HANDLERS[command]
    # rebuild exact option types lost through JSON
    options = _revive_options(command, options)
    code = handler(options)
    write_manifest(Path(options["out"]) / "manifest.json", command, _manifest_options(options))
    return code


_HANDLERS = {
    "gaps": cmd_gaps,
    "identity": cmd_identity,
    "largevalues": cmd_largevalues,
    "perron": cmd_perron,
    "verify": cmd_verify,
    "optimize-nu": cmd_optimize_nu,
}


def _manifest_options(options: dict) -> dict:
    out = {}
    for k, v in options.items():
        out[k] = str(v) if isinstance(v, Fraction) else v
    return out


def _revive_options(command: str, options: dict) -> dict:
    if command == "optimize-nu" and isinstance(options.get("res"), str):
        options["res"] = parse_fraction_literal(options["res"])
    return options


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="gapscope", description=__doc__)
    p.add_argument("--version", action="version", version=f"gapscope {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output directory (default ./gapscope-out)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (env GAPSCOPE_THREADS overrides)")
    common.add_argument("--config", default=None, help="key=value config file")

    g = sub.add_parser("gaps", parents=[common], help="gap table and moment summaries")
    g.add_argument("--limits", type=_limits_arg, default=None, help="comma list, e.g. 10,1e6")
    g.add_argument("--allow-large", action="store_true", default=None)
    g.add_argument("--ceiling", type=parse_int_literal, default=None)
    g.add_argument("--stream-csv", action="store_true", default=None,
                   help="also write the per-gap CSV stream")
    g.add_argument("--stream-limit", type=parse_int_literal, default=None)

    i = sub.add_parser("identity", parents=[common], help="Lambda recovery check")
    i.add_argument("--x", type=parse_int_literal, default=None)
    i.add_argument("--k", type=parse_int_literal, default=None)
    i.add_argument("--dump-factorizations", action="store_true", default=None)

    l = sub.add_parser("largevalues", parents=[common], help="randomized cell experiments")
    l.add_argument("--experiments", type=parse_int_literal, default=None)
    l.add_argument("--seed", type=parse_int_literal, default=None)
    l.add_argument("--slack", type=float, default=None)

    pe = sub.add_parser("perron", parents=[common], help="truncated window estimate")
    pe.add_argument("--y", type=float, default=None)
    pe.add_argument("--tau", type=float, default=None)
    pe.add_argument("--T0", type=float, default=None)
    pe.add_argument("--factors", default=None, help="e.g. unit:8,singleton")
    pe.add_argument("--gauss-order", type=parse_int_literal, default=None)

    v = sub.add_parser("verify", parents=[common], help="exact inequality ledger")
    v.add_argument("--ledger", default=None, help="ledger file (default: builtin)")

    o = sub.add_parser("optimize-nu", parents=[common], help="recover the critical exponent")
    o.add_argument("--res", type=parse_fraction_literal, default=None)

    r = sub.add_parser("report", parents=[common], help="re-run from a manifest")
    r.add_argument("--manifest", required=True)
    return p


_DEFAULTS = {
    "gaps": {"limits": [10, 100, 1000], "allow_large": False,
             "ceiling": 10**10, "stream_csv": False, "stream_limit": 10**5},
    "identity": {"x": 50, "k": 2, "dump_factorizations": False},
    "largevalues": {"experiments": 100, "seed": 20120116, "slack": 100.0},
    "perron": {"y": 201.5, "tau": 10.0, "T0": None, "factors": "unit:128",
               "gauss_order": 24},
    "verify": {"ledger": None},
    "optimize-nu": {"res": Fraction(1, 64)},
    "report": {"manifest": None},
}

_CONFIG_PARSERS = {
    "limits": _limits_arg,
    "allow_large": lambda v: v.lower() in ("1", "true", "yes"),
    "stream_csv": lambda v: v.lower() in ("1", "true", "yes"),
    "dump_factorizations": lambda v: v.lower() in ("1", "true", "yes"),
    "ceiling": parse_int_literal,
    "stream_limit": parse_int_literal,
    "x": parse_int_literal,
    "k": parse_int_literal,
    "experiments": parse_int_literal,
    "seed": parse_int_literal,
    "slack": float,
    "y": float,
    "tau": float,
    "T0": float,
    "gauss_order": parse_int_literal,
    "res": parse_fraction_literal,
    "threads": int,
    "out": str,
    "ledger": str,
    "factors": str,
}


def resolve_options(args: argparse.Namespace) -> dict:
    """Layered options: command line > config file > defaults."""
    command = args.command
    opt = dict(_DEFAULTS.get(command, {}))
    opt.setdefault("out", "gapscope-out")
    opt.setdefault("threads", 0)
    cfg = load_config_file(args.config) if getattr(args, "config", None) else {}
    for key, raw in cfg.items():
        if key in _CONFIG_PARSERS:
            opt[key] = _CONFIG_PARSERS[key](raw)
    for key, val in vars(args).items():
        if key in ("command", "config") or val is None:
            continue
        opt[key] = val
    env_threads = os.environ.get("GAPSCOPE_THREADS")
    if env_threads:
        opt["threads"] = int(env_threads)
    if not opt["threads"]:
        opt["threads"] = os.cpu_count() or 1
    return opt


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opt = resolve_options(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    command = args.command
    try:
        if command == "report":
            return cmd_report(opt)
        handler = _HANDLERS[command]
        code = handler(opt)
        write_manifest(Path(opt["out"]) / "manifest.json", command, _manifest_options(opt))
        return code
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
