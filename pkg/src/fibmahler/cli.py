"""Command-line interface.

Subcommands: table, delta, verify, compat, search, plot, exceptional.
Global flags configure the prime pair, ambient dimension, precision,
tolerance, cache directory and output format.  Exit codes: 0 success or
certified, 2 violated, 3 inconclusive, 4 incompatible pair.

Output is byte-deterministic for a fixed configuration: sets are sorted
and every real number is printed with 15 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import mpmath

from . import cache, envelope, figures, lattice, solver
from .arith import fib_table
from .measures import PrimePair, coefficient_vector

EXIT_OK = 0
EXIT_VIOLATED = 2
EXIT_INCONCLUSIVE = 3
EXIT_INCOMPATIBLE = 4

_HARD_DEFAULTS = {
    "N": 13, "p": 1879, "q": 198301,
    "precision": 128, "tol": 1e-12,
    "format": "csv",
    "cache_dir": os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")),
        "fibmahler"),
}


@dataclass
class RunConfig:
    N: int
    p: int
    q: int
    precision: int
    tol: float
    cache_dir: str
    format: str

    def pair(self) -> PrimePair:
        return PrimePair(self.p, self.q, self.precision)


def _nstr(x) -> str:
    return mpmath.nstr(mpmath.mpf(x), 15)


def _read_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_vals = _read_config_file(args.config) if getattr(args, 'config', None) else {}

    def pick(name, cast):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_vals:
            return cast(file_vals[name])
        return _HARD_DEFAULTS[name]

    cfg = RunConfig(
        N=pick("N", int), p=pick("p", int), q=pick("q", int),
        precision=pick("precision", int), tol=pick("tol", float),
        cache_dir=str(pick("cache_dir", str)), format=pick("format", str),
    )
    if cfg.format not in ("csv", "json", "tsv"):
        raise ValueError(f"unknown format {cfg.format!r}")
    return cfg


def _emit_table(header: list[str], rows: list[list[str]], fmt: str,
                json_payload=None, out=None) -> None:
    if out is None:
        out = sys.stdout
    if fmt == "json":
        json.dump(json_payload if json_payload is not None
                  else {"header": header, "rows": rows}, out, indent=1)
        out.write("\n")
        return
    sep = "," if fmt == "csv" else "\t"
    out.write(sep.join(header) + "\n")
    for row in rows:
        out.write(sep.join(row) + "\n")


def _restricted_chain(cfg: RunConfig, n_max: int):
    """R_1..R_{n_max} with C families pulled through the disk cache."""
    h = fib_table(n_max, cfg.N)
    c_families = {n: cache.ensure_C(cfg.cache_dir, n, cfg.N, h)
                  for n in range(1, n_max + 1)}
    return lattice.build_R_chain(n_max, cfg.N, h, c_families), h


def cmd_table(args, cfg: RunConfig) -> int:
    n_max = args.n_max if args.n_max is not None else cfg.N
    if n_max > cfg.N:
        raise ValueError("--n-max cannot exceed the ambient dimension N")
    h = fib_table(n_max, cfg.N)
    chain, _ = _restricted_chain(cfg, n_max)
    rows = []
    payload = []
    for n in range(1, n_max + 1):
        v_count, c_count = cache.ensure_counts(cfg.cache_dir, n, cfg.N, h)
        r_count = len(chain[n - 1])
        s_count = len(lattice.build_S(n, cfg.N, h))
        rows.append([str(n), str(v_count), str(c_count),
                     str(r_count), str(s_count)])
        payload.append({"n": n, "V": v_count, "C": c_count,
                        "R": r_count, "S": s_count})
    _emit_table(["n", "V", "C", "R", "S"], rows, cfg.format, payload)
    return EXIT_OK


def cmd_delta(args, cfg: RunConfig) -> int:
    n = args.n
    chain, h = _restricted_chain(cfg, n)
    vectors = [lattice.trim(v) for v in lattice.delta(n, cfg.N, chain, h)]
    if cfg.format == "json":
        _emit_table([], [], "json",
                    {"n": n, "vectors": [list(v) for v in vectors]})
    else:
        sep = "," if cfg.format == "csv" else "\t"
        for v in vectors:
            sys.stdout.write(sep.join(map(str, v)) + "\n")
    return EXIT_OK


def _require_compatible(cfg: RunConfig) -> PrimePair:
    pair = cfg.pair()
    report = solver.compatible(pair, cfg.N, cfg.tol)
    if not report.verdict:
        sys.stderr.write(
            f"pair ({cfg.p}, {cfg.q}) is not compatible at N={cfg.N}: "
            f"weak={report.weak_ok} ordered={report.strictly_decreasing}\n")
        raise SystemExit(EXIT_INCOMPATIBLE)
    return pair


def _verify_through(cfg: RunConfig, n: int):
    pair = _require_compatible(cfg)
    chain, h = _restricted_chain(cfg, n)
    coeffs = coefficient_vector(pair, cfg.N, h)
    summaries = []
    for i in range(1, n + 1):
        extras = lattice.r_minus_s(i, cfg.N, chain[i - 1], h)
        env = (envelope.build_envelope(i, pair, coeffs, cfg.tol, h)
               if i >= 3 else None)
        summaries.append(envelope.verify_conjecture(
            i, pair, extras, env, tol=cfg.tol, fib=h))
    return pair, coeffs, summaries, h


_STATUS_EXIT = {envelope.CERTIFIED: EXIT_OK,
                envelope.VIOLATED: EXIT_VIOLATED,
                envelope.INCONCLUSIVE: EXIT_INCONCLUSIVE}


def cmd_verify(args, cfg: RunConfig) -> int:
    n = args.n
    _, _, summaries, _ = _verify_through(cfg, n)
    rows = []
    payload = []
    for s in summaries:
        offenders = ";".join("_".join(map(str, lattice.trim(v)))
                             for v in s.offenders)
        rows.append([str(s.n), s.status, str(len(s.certificates)), offenders])
        payload.append({
            "n": s.n, "status": s.status,
            "certificates": [{
                "target": list(lattice.trim(c.target)),
                "status": c.status,
                "headCutoff": _nstr(c.head_cutoff),
                "tailCutoff": _nstr(c.tail_cutoff),
                "gridSize": c.grid_size,
                "minMargin": _nstr(c.min_margin)
                if c.min_margin != float("inf") else "inf",
            } for c in s.certificates],
        })
    _emit_table(["n", "status", "checked", "offenders"], rows, cfg.format,
                payload)
    worst = max(_STATUS_EXIT[s.status] for s in summaries)
    return worst


def cmd_compat(args, cfg: RunConfig) -> int:
    pair = cfg.pair()
    report = solver.compatible(pair, cfg.N, cfg.tol)
    rows = [[str(cfg.N), str(report.weak_ok).lower(),
             str(report.strictly_decreasing).lower(),
             str(report.verdict).lower()]]
    payload = {
        "N": cfg.N, "weakOk": report.weak_ok,
        "strictlyDecreasing": report.strictly_decreasing,
        "verdict": report.verdict,
        "breakpoints": [{"index": bp.index, "value": _nstr(bp.value),
                         "bracket": [_nstr(bp.lo), _nstr(bp.hi)]}
                        for bp in report.breakpoints],
    }
    _emit_table(["N", "weak", "ordered", "verdict"], rows, cfg.format, payload)
    return EXIT_OK if report.verdict else EXIT_INCOMPATIBLE


def cmd_search(args, cfg: RunConfig) -> int:
    found = solver.find_compatible_pairs(
        cfg.N, args.p_min, args.p_max, args.max_results,
        cfg.tol, cfg.precision)
    rows = []
    payload = []
    for pair, offset in found:
        max_n = solver.max_compatible_N(pair, args.cap, cfg.tol)
        rows.append([str(pair.p), str(pair.q), _nstr(offset), str(max_n)])
        payload.append({"p": pair.p, "q": pair.q,
                        "ratioOffset": _nstr(offset), "maxCompatibleN": max_n})
    _emit_table(["p", "q", "ratio_offset", "max_N"], rows, cfg.format, payload)
    return EXIT_OK


def cmd_plot(args, cfg: RunConfig) -> int:
    n = args.n
    pair = _require_compatible(cfg)
    chain, h = _restricted_chain(cfg, n)
    coeffs = coefficient_vector(pair, cfg.N, h)
    env = envelope.build_envelope(n, pair, coeffs, cfg.tol, h)
    extras = lattice.r_minus_s(n, cfg.N, chain[n - 1], h)
    header, rows = envelope.emit_plot_data(
        n, pair, extras, args.t_min, args.t_max, args.samples, env,
        cfg.tol, h)
    ext = {"csv": ".csv", "tsv": ".tsv", "json": ".json"}[cfg.format]
    out_path = Path(args.out) if args.out else Path(f"plot_n{n}{ext}")
    text_rows = [[_nstr(v) if not isinstance(v, int) else str(v) for v in row]
                 for row in rows]
    with open(out_path, "w") as fh:
        _emit_table(header, text_rows, cfg.format,
                    {"header": header, "rows": text_rows}, out=fh)
    fig_path = figures.render_plot(header, rows, env.breakpoints,
                                   out_path.with_suffix(".png"),
                                   title=f"n={n}, p={cfg.p}, q={cfg.q}")
    sys.stdout.write(f"{out_path}\n{fig_path}\n")
    return EXIT_OK


def cmd_exceptional(args, cfg: RunConfig) -> int:
    n = args.n
    pair, coeffs, summaries, _ = _verify_through(cfg, n)
    worst = max(_STATUS_EXIT[s.status] for s in summaries)
    if worst != EXIT_OK:
        sys.stderr.write("verification did not certify all levels\n")
        return worst
    report = envelope.exceptional_points(n, pair, summaries, cfg.tol, coeffs)
    rows = [[str(bp.index), _nstr(bp.value)] for bp in report.points]
    payload = {"n": n, "count": report.count,
               "breakpoints": [{"index": bp.index, "value": _nstr(bp.value),
                                "bracket": [_nstr(bp.lo), _nstr(bp.hi)]}
                               for bp in report.points]}
    if cfg.format == "json":
        _emit_table([], [], "json", payload)
    else:
        sys.stdout.write(f"count{',' if cfg.format == 'csv' else chr(9)}"
                         f"{report.count}\n")
        _emit_table(["index", "value"], rows, cfg.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # global flags live on a parent so they are accepted before or after
    # the subcommand; SUPPRESS keeps the subparser from clobbering values
    # parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS)
    common.add_argument("--q", type=int, default=argparse.SUPPRESS)
    common.add_argument("--N", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", dest="cache_dir",
                        default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("csv", "json", "tsv"),
                        default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key=value file supplying defaults")

    ap = argparse.ArgumentParser(
        prog="fibmahler",
        parents=[common],
        description="t-metric Mahler measure data for Fibonacci-exponent "
                    "rationals: vector families, breakpoints, envelope "
                    "verification, prime-pair search")
    sub = ap.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", parents=[common],
                             help="cardinality table of V/C/R/S")
    p_table.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_table.set_defaults(func=cmd_table)

    p_delta = sub.add_parser("delta", parents=[common], help="new restricted points at level n")
    p_delta.add_argument("--n", type=int, required=True)
    p_delta.set_defaults(func=cmd_delta)

    p_verify = sub.add_parser("verify", parents=[common], help="certify the minimum through level n")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.set_defaults(func=cmd_verify)

    p_compat = sub.add_parser("compat", parents=[common], help="compatibility of a prime pair")
    p_compat.set_defaults(func=cmd_compat)

    p_search = sub.add_parser("search", parents=[common], help="search compatible prime pairs")
    p_search.add_argument("--p-min", dest="p_min", type=int, required=True)
    p_search.add_argument("--p-max", dest="p_max", type=int, required=True)
    p_search.add_argument("--max-results", dest="max_results", type=int,
                          default=10)
    p_search.add_argument("--cap", type=int, default=30,
                          help="cap for the max compatible level report")
    p_search.set_defaults(func=cmd_search)

    p_plot = sub.add_parser("plot", parents=[common], help="tabulate and render the curves")
    p_plot.add_argument("--n", type=int, required=True)
    p_plot.add_argument("--t-min", dest="t_min", type=float, default=0.5)
    p_plot.add_argument("--t-max", dest="t_max", type=float, default=20.0)
    p_plot.add_argument("--samples", type=int, default=512)
    p_plot.add_argument("--out", default=None)
    p_plot.set_defaults(func=cmd_plot)

    p_exc = sub.add_parser("exceptional", parents=[common], help="exceptional points at level n")
    p_exc.add_argument("--n", type=int, required=True)
    p_exc.set_defaults(func=cmd_exceptional)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _resolve_config(args)
    try:
        return args.func(args, cfg)
    except SystemExit:
        raise
    except (ValueError, solver.PrecisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
