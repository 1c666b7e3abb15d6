"""Command-line front end: construct, verify, simulate, analyze, sweep.

Outputs are deterministic for a given (arguments, seed): JSON is emitted
with sorted keys, CSV rows in a fixed order with the stable header
scheme,K,r,K_r,t,value.  Exit codes: 0 ok, 1 verification failure,
2 invalid configuration, 3 internal invariant breach.

The environment variable CPC_THREADS caps sweep parallelism (default 1);
grid results are collected in deterministic order regardless.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .model import (
    ConstraintViolation,
    InfeasibleInstance,
    InternalInvariantError,
    ParameterError,
    ShuffleConfig,
    SystemParams,
    enum_partitions,
    validate_config,
)
from .placement import build_placement, map_phase
from .codec import encode_partition, segment_ivs
from .channel import (
    end_to_end_verify,
    ideal_verify,
    simulate_with_resample,
    simulation_bits,
)
from . import ndt
from .optimize import brute_force_min, closed_form_min, cross_validate, t1_optimal_regime

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_CONFIG = 2
EXIT_INTERNAL = 3

CSV_HEADER = ["scheme", "K", "r", "K_r", "t", "value"]


def _add_instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--K", type=int, required=True, help="number of nodes")
    p.add_argument("--N", type=int, help="number of input files (default C(K,r))")
    p.add_argument("--Q", type=int, help="number of output functions (default K)")
    p.add_argument("--r", type=int, required=True, help="computation load")
    p.add_argument("--B", type=int, help="bits per IV (default: smallest valid)")
    p.add_argument("--Kr", type=int, help="receiver group size (default optimal)")
    p.add_argument("--t", type=int, help="cooperation size (default optimal)")


def _instance(args) -> tuple[SystemParams, ShuffleConfig]:
    """Build (params, config) from flags; unpinned (Kr, t) fall back to the
    optimizer's argmin, respecting whichever one the user did pin."""
    K, r = args.K, args.r
    N = args.N if args.N is not None else math.comb(K, r)
    Q = args.Q if args.Q is not None else K
    if args.Kr is not None and args.t is not None:
        K_r, t = args.Kr, args.t
    elif args.t is not None:
        K_r, t = ndt.cpc_fixed_t_minimum(r, args.t, K).K_r, args.t
    elif args.Kr is not None:
        K_r = args.Kr
        candidates = [
            tt for tt in range(1, r + 1)
            if tt <= K - K_r and 1 <= r + 1 - tt <= K_r
        ]
        if not candidates:
            raise ParameterError(f"no valid t for K_r={K_r}, r={r}, K={K}")
        t = min(candidates, key=lambda tt: ndt.ndt_cpc(r, tt, K, K_r).value)
    else:
        best = brute_force_min(r, K)
        K_r, t = best.K_r_star, best.t_star
    probe = SystemParams(K=K, N=N, Q=Q, r=r, B=8)
    cfg = validate_config(probe, K_r, t)
    B = args.B if args.B is not None else simulation_bits(cfg, 8)
    params = SystemParams(K=K, N=N, Q=Q, r=r, B=B)
    return params, validate_config(params, K_r, t)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_construct(args) -> int:
    if args.r == args.K:
        # everything is local: nothing to shuffle
        _emit(args, _json({"params": {"K": args.K, "r": args.r}, "partitions": [],
                           "messages": [], "placement": None}))
        return EXIT_OK
    params, cfg = _instance(args)
    placement = build_placement(params)
    store = map_phase(placement, params, args.seed)
    segments = segment_ivs(placement, cfg, store)
    partitions = enum_partitions(params.K, cfg.K_t)
    dump = {
        "params": {"K": params.K, "N": params.N, "Q": params.Q, "r": params.r,
                   "B": params.B, "K_r": cfg.K_r, "t": cfg.t, "s": cfg.s,
                   "seed": args.seed},
        "placement": {
            "file_to_nodes": {str(n): list(g.members)
                              for n, g in sorted(placement.file_to_nodes.items())},
            "reduce_assignment": {str(k): sorted(v)
                                  for k, v in placement.reduce_assignment.items()},
        },
        "partitions": [
            {"p": part.index, "tx": list(part.tx.members), "rx": list(part.rx.members)}
            for part in partitions
        ],
        "messages": [],
    }
    for part in partitions:
        for m in encode_partition(segments, part, cfg):
            entry = {
                "p": m.partition,
                "D": list(m.dest_group.members),
                "B": list(m.coop.members),
                "segments": [
                    {"dest": sid.dest, "storage": list(sid.storage.members)}
                    for sid in m.constituents()
                ],
            }
            if args.with_payloads:
                entry["payload"] = m.payload.hex()
            dump["messages"].append(entry)
    _emit(args, _json(dump))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.r == args.K:
        # every IV is local: nothing to shuffle, trivially correct
        _emit(args, _json({"ok": True, "failures": [], "partitions": 0}))
        return EXIT_OK
    params, cfg = _instance(args)
    corrupt = (1, 0) if args.fault else None
    if args.ideal:
        ok, report = ideal_verify(params, cfg, args.seed, corrupt=corrupt)
    else:
        ok, report = end_to_end_verify(
            params, cfg, args.seed, tol=args.tolerance, corrupt=corrupt
        )
    _emit(args, _json(report.summary()))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_simulate(args) -> int:
    params, cfg = _instance(args)
    placement = build_placement(params)
    store = map_phase(placement, params, args.seed)
    segments = segment_ivs(placement, cfg, store)
    partitions = enum_partitions(params.K, cfg.K_t)
    if not 1 <= args.partition <= len(partitions):
        raise ParameterError(
            f"partition index {args.partition} out of [1, {len(partitions)}]"
        )
    part = partitions[args.partition - 1]
    messages = encode_partition(segments, part, cfg)
    report = simulate_with_resample(
        part, cfg, messages, args.seed, tol=args.tolerance, snr_db=args.snr
    )
    _emit(args, _json(report.summary()))
    return EXIT_OK


def _parse_r(text: str) -> Fraction:
    return Fraction(text)


def _point_rows(r, K: int) -> list[list]:
    rows = []
    for scheme in ndt.SCHEMES:
        point = ndt.scheme_point(scheme, r, K)
        rows.append(point.csv_row())
    return rows


def cmd_ndt(args) -> int:
    r = _parse_r(args.r)
    rows = _point_rows(r, args.K)
    if args.format == "csv":
        _emit(args, _csv(rows))
    else:
        _emit(args, _json([dict(zip(CSV_HEADER, row)) for row in rows]))
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _sweep_grid(args) -> list[tuple]:
    """(r, K, t, all_schemes) cells for the requested sweep.

    fig2 and fig3 tabulate every scheme plus the bound; fig4 follows the
    optimized scheme across K for several loads; fig5 pins the cooperation
    size t instead of optimizing it.
    """
    if args.preset == "fig2":
        return [(r, 50, None, True) for r in range(1, 51)]
    if args.preset == "fig3":
        return [(2, K, None, True) for K in range(3, 51)]
    if args.preset == "fig4":
        return [(r, K, None, False) for r in (2, 3, 4, 5) for K in range(r + 1, 51)]
    if args.preset == "fig5":
        return [
            (r, K, t, False)
            for t in (1, 2, 3)
            for r in range(4, 11)
            for K in range(25, 51)
        ]
    if args.r_range is None or args.K_range is None:
        raise ParameterError("sweep needs --preset or both --r-range and --K-range")
    return [
        (r, K, None, True)
        for r in _parse_range(args.r_range)
        for K in _parse_range(args.K_range)
        if r <= K
    ]


def _sweep_cell(cell) -> list[list]:
    r, K, t, all_schemes = cell
    if t is not None:
        point = ndt.cpc_fixed_t_minimum(r, t, K) if t <= r <= K else None
        return [point.csv_row()] if point else []
    if all_schemes:
        return _point_rows(r, K)
    return [ndt.scheme_point(ndt.CPC, r, K).csv_row()]


def cmd_sweep(args) -> int:
    grid = _sweep_grid(args)
    workers = max(1, int(os.environ.get("CPC_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_cell, grid))
    else:
        chunks = [_sweep_cell(cell) for cell in grid]
    rows = [row for chunk in chunks for row in chunk]
    if args.format == "json":
        _emit(args, _json([dict(zip(CSV_HEADER, row)) for row in rows]))
    else:
        _emit(args, _csv(rows))
    return EXIT_OK


def cmd_optimize(args) -> int:
    if args.K_max is not None:
        report = cross_validate(args.K_max)
        _emit(args, _json(report))
        return EXIT_OK
    brute = brute_force_min(args.r, args.K)
    closed = closed_form_min(args.r, args.K)
    out = {
        "r": args.r,
        "K": args.K,
        "brute": str(brute.best_value),
        "closed": str(closed.best_value),
        "K_r": closed.K_r_star,
        "t": closed.t_star,
        "branch": closed.branch,
        "agree": brute.best_value == closed.best_value,
        "t1_regime": t1_optimal_regime(args.r, args.K),
    }
    if not out["agree"]:
        _emit(args, _json(out))
        return EXIT_INTERNAL
    _emit(args, _json(out))
    return EXIT_OK


def cmd_bounds(args) -> int:
    r = _parse_r(args.r)
    model = ndt.lower_bound(r, args.K)
    out = {
        "r": str(r),
        "K": args.K,
        "lb1": str(model.lb1),
        "lb2": str(model.lb2),
        "bound": str(model.bound),
        "gap_ratio": str(ndt.gap_ratio(r, args.K)),
    }
    _emit(args, _json(out))
    return EXIT_OK


def cmd_figures(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    for preset in ("fig2", "fig3", "fig4", "fig5"):
        ns = argparse.Namespace(
            preset=preset, r_range=None, K_range=None, format="csv",
            out=os.path.join(args.out_dir, f"{preset}.csv"),
        )
        cmd_sweep(ns)
        print(f"wrote {ns.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpcshuffle",
        description="Coded parallel-computing shuffle: construction, verification, analytics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the scheme and dump it as JSON")
    _add_instance_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--with-payloads", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the pipeline and check byte-exact recovery")
    _add_instance_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ideal", action="store_true", help="skip the channel (XOR only)")
    p.add_argument("--fault", action="store_true", help="inject a payload corruption")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="simulate one partition's delivery")
    _add_instance_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partition", type=int, default=1)
    p.add_argument("--snr", type=float, default=None, help="optional noise level (dB)")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ndt", help="evaluate every scheme at one (r, K)")
    p.add_argument("--r", required=True, help="load, integer or fraction like 5/2")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ndt)

    p = sub.add_parser("sweep", help="grid sweep over (r, K), presets regenerate figures")
    p.add_argument("--preset", choices=("fig2", "fig3", "fig4", "fig5"))
    p.add_argument("--r-range", help="like 1:10")
    p.add_argument("--K-range", help="like 2:50")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="closed-form vs exhaustive minimum")
    p.add_argument("--r", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--K-max", type=int, help="cross-validate the whole grid up to K")
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bounds", help="lower bound and achievable gap at (r, K)")
    p.add_argument("--r", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("figures", help="write all figure-preset CSVs")
    p.add_argument("--out-dir", default="figures")
    p.set_defaults(func=cmd_figures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConstraintViolation, InfeasibleInstance, ParameterError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except (InternalInvariantError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
