"""Command line interface.

Subcommands:
  run           run an ensemble experiment from a config file
  theory        evaluate the cascade closed forms on a time grid
  snapshot      dump single-realization w_f tables at chosen times
  figures-data  emit the canonical tables behind the twelve figures
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .cascade import (entropy_cascade, entropy_one_class, inv_ipr_cascade,
                      ipr_one_class, survival_theory)
from .figures import ALL_FIGURES, figures_data
from .runner import ConfigError, parse_config, run, snapshot_dump
from .tables import write_table


def _experiment_name(config_path) -> str:
    return os.path.splitext(os.path.basename(config_path))[0]


def _cmd_run(args):
    config = parse_config(args.config)
    result = run(config, workers=args.workers)
    outdir = os.path.join(args.output, _experiment_name(args.config))
    for name, columns in result.tables.items():
        path = os.path.join(outdir, f"{name}.csv")
        write_table(path, columns, result.metadata)
        print(path)
    if "snapshots" in config.outputs and config.snapshot_times:
        for name, columns in snapshot_dump(config).items():
            path = os.path.join(outdir, f"{name}.csv")
            write_table(path, columns, result.metadata)
            print(path)
    return 0


def _cmd_theory(args):
    t = np.linspace(0.0, args.t_max, args.n_points)
    columns = {
        "t": t,
        "W0": survival_theory(t, args.gamma_p, args.delta_e),
        "S_cascade": [entropy_cascade(x, args.gamma_p, args.branching)
                      for x in t],
    }
    w0 = columns["W0"]
    if args.npc_inf is not None:
        columns["S_one_class"] = entropy_one_class(w0, args.npc_inf)
    if args.ipr_inf is not None:
        columns["ipr_one_class"] = ipr_one_class(w0, args.ipr_inf)
    columns["inv_ipr_cascade"] = [inv_ipr_cascade(max(x, 1e-300),
                                                  args.branching)
                                  for x in w0]
    meta = [f"gamma_p = {args.gamma_p}", f"delta_E = {args.delta_e}",
            f"M = {args.branching}"]
    if args.output:
        write_table(args.output, columns, meta)
        print(args.output)
    else:
        for line in meta:
            sys.stdout.write(f"# {line}\n")
        names = list(columns)
        sys.stdout.write(",".join(names) + "\n")
        for i in range(t.size):
            sys.stdout.write(",".join(f"{float(columns[k][i]):.17g}"
                                      for k in names) + "\n")
    return 0


def _cmd_snapshot(args):
    config = parse_config(args.config)
    times = tuple(args.times) if args.times else None
    outdir = os.path.join(args.output, _experiment_name(args.config))
    for name, columns in snapshot_dump(config, times).items():
        path = os.path.join(outdir, f"{name}.csv")
        write_table(path, columns)
        print(path)
    return 0


def _cmd_figures_data(args):
    figures = args.figures or list(ALL_FIGURES)
    written = figures_data(args.output, figures=figures, fast=args.fast,
                           workers=args.workers)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockcascade",
        description="Wave-packet dynamics in TBRI / WBRM ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("config")
    p.add_argument("-o", "--output", default=".")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("theory", help="evaluate closed forms on a grid")
    p.add_argument("--gamma-p", type=float, required=True, dest="gamma_p")
    p.add_argument("--delta-e", type=float, required=True, dest="delta_e")
    p.add_argument("--branching", "-M", type=int, required=True)
    p.add_argument("--npc-inf", type=float, default=None, dest="npc_inf")
    p.add_argument("--ipr-inf", type=float, default=None, dest="ipr_inf")
    p.add_argument("--t-max", type=float, default=40.0, dest="t_max")
    p.add_argument("--n-points", type=int, default=200, dest="n_points")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("snapshot", help="dump w_f tables at chosen times")
    p.add_argument("config")
    p.add_argument("--times", type=float, nargs="+", default=None)
    p.add_argument("-o", "--output", default=".")
    p.set_defaults(func=_cmd_snapshot)

    p = sub.add_parser("figures-data",
                       help="emit the canonical figure tables")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--figures", type=int, nargs="+", default=None,
                   choices=list(ALL_FIGURES))
    p.add_argument("--fast", action="store_true",
                   help="reduced ensemble sizes, same table schema")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_figures_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
