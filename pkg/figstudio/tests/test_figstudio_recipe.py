import glob
import os

import pytest

from figstudio.recipe import FigureRecipe, RecipeError, parse_recipe

RECIPE_DIR = os.path.join(os.path.dirname(__file__), "..", "recipes")


def test_parse_recipe(tmp_path):
    path = tmp_path / "f.recipe"
    path.write_text(
        "# a comment\n"
        "figure = 4\n"
        "tables = a.csv, b.csv\n"
        "x = t\n"
        "y = S\n"
        "overlays = S_theory\n"
        "yscale = log\n"
        "output = out.png\n")
    recipe = parse_recipe(path)
    assert recipe.figure == 4
    assert recipe.tables == ("a.csv", "b.csv")
    assert recipe.overlays == ("S_theory",)
    assert recipe.yscale == "log" and recipe.xscale == "linear"


def test_parse_errors(tmp_path):
    cases = [
        ("figure = 4\n", "missing keys"),
        ("nonsense\n", "expected"),
        ("whatkey = 3\n", "unknown key"),
        ("figure = 1\nfigure = 2\n", "duplicate"),
    ]
    for body, message in cases:
        path = tmp_path / "bad.recipe"
        path.write_text(body)
        with pytest.raises(RecipeError, match=message):
            parse_recipe(path)


def test_recipe_validation():
    with pytest.raises(RecipeError):
        FigureRecipe(figure=13, tables=("a.csv",), x="t", y="S",
                     output="o.png")
    with pytest.raises(RecipeError):
        FigureRecipe(figure=1, tables=(), x="t", y="S", output="o.png")
    with pytest.raises(RecipeError):
        FigureRecipe(figure=1, tables=("a.csv",), x="t", y="S",
                     output="o.png", xscale="cubic")
    with pytest.raises(RecipeError):
        FigureRecipe(figure=1, tables=("a.csv",), x="t", y="S", output="")


def test_shipped_recipes_cover_all_figures():
    paths = sorted(glob.glob(os.path.join(RECIPE_DIR, "*.recipe")))
    recipes = [parse_recipe(p) for p in paths]
    assert sorted(r.figure for r in recipes) == list(range(1, 13))
    for r in recipes:
        assert r.output.endswith(".png")
