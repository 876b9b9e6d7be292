"""Figure recipes: one structured key = value text file per figure.

A recipe names the input tables (one axes panel per table), the x and y
columns, optional overlay columns drawn as lines, axes scales, and the
output image file.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


class RecipeError(ValueError):
    pass


_SCALES = ("linear", "log")


@dataclass(frozen=True)
class FigureRecipe:
    figure: int
    tables: tuple            # input table paths, one panel each
    x: str
    y: str
    output: str
    overlays: tuple = ()     # extra columns plotted as lines
    xscale: str = "linear"
    yscale: str = "linear"
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""

    def __post_init__(self):
        if not 1 <= self.figure <= 12:
            raise RecipeError(f"figure id {self.figure} outside 1..12")
        if not self.tables:
            raise RecipeError("recipe needs at least one table")
        if self.xscale not in _SCALES or self.yscale not in _SCALES:
            raise RecipeError(
                f"axes scales must be linear or log, got "
                f"{self.xscale!r}/{self.yscale!r}")
        if not self.output:
            raise RecipeError("recipe needs an output image path")


_INT_KEYS = {"figure"}
_LIST_KEYS = {"tables", "overlays"}


def parse_recipe(path) -> FigureRecipe:
    """Same key = value grammar as the simulation configs."""
    known = {f.name for f in fields(FigureRecipe)}
    kwargs = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise RecipeError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise RecipeError(f"{path}:{lineno}: unknown key {key!r}")
            if key in kwargs:
                raise RecipeError(f"{path}:{lineno}: duplicate key {key!r}")
            if key in _INT_KEYS:
                kwargs[key] = int(value)
            elif key in _LIST_KEYS:
                kwargs[key] = tuple(v.strip() for v in value.split(",")
                                    if v.strip())
            else:
                kwargs[key] = value
    missing = [k for k in ("figure", "tables", "x", "y", "output")
               if k not in kwargs]
    if missing:
        raise RecipeError(f"{path}: missing keys: {', '.join(missing)}")
    return FigureRecipe(**kwargs)
