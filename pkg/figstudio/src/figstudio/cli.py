"""Command line interface: render figure recipes from result tables."""

from __future__ import annotations

import argparse
import sys

from .recipe import RecipeError, parse_recipe
from .render import render
from .tables import TableError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figstudio",
        description="Render figure analogs from simulation tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render one recipe to an image")
    p.add_argument("--recipe", required=True, action="append",
                   help="recipe file; repeat for several figures")
    p.add_argument("--data-root", default=".", dest="data_root",
                   help="directory the recipe table paths are relative to")
    p.add_argument("-o", "--output", default=".",
                   help="directory the output image paths are relative to")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        for path in args.recipe:
            recipe = parse_recipe(path)
            print(render(recipe, data_root=args.data_root,
                         outdir=args.output))
    except (RecipeError, TableError, FileNotFoundError) as exc:
        parser.exit(2, f"error: {exc}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
