import numpy as np
import pytest

from figstudio.recipe import FigureRecipe
from figstudio.render import load_series, render
from figstudio.tables import TableError, read_table


def write_table(path, columns, metadata=()):
    names = list(columns)
    with open(path, "w") as fh:
        for line in metadata:
            fh.write(f"# {line}\n")
        fh.write(",".join(names) + "\n")
        n = len(columns[names[0]])
        for i in range(n):
            fh.write(",".join(f"{columns[k][i]:.17g}" for k in names) + "\n")


@pytest.fixture
def data_root(tmp_path):
    t = np.linspace(0, 5, 30)
    write_table(tmp_path / "obs.csv",
                {"t": t, "S": np.log1p(t), "S_theory": np.log1p(t) * 1.02},
                metadata=["model = tbri"])
    return tmp_path


def test_read_table_roundtrip(data_root):
    meta, cols = read_table(data_root / "obs.csv")
    assert meta == ["model = tbri"]
    assert set(cols) == {"t", "S", "S_theory"}
    assert cols["t"].shape == (30,)


def test_read_table_missing_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("# nothing else\n")
    with pytest.raises(TableError):
        read_table(path)


def test_load_series_bit_for_bit(data_root):
    recipe = FigureRecipe(figure=4, tables=("obs.csv",), x="t", y="S",
                          overlays=("S_theory",), output="fig04.png")
    panels = load_series(recipe, data_root)
    _, cols = read_table(data_root / "obs.csv")
    (_, x, y, overlays), = panels
    assert np.array_equal(x, cols["t"])
    assert np.array_equal(y, cols["S"])
    assert np.array_equal(overlays["S_theory"], cols["S_theory"])


def test_render_writes_image(data_root, tmp_path):
    recipe = FigureRecipe(figure=4, tables=("obs.csv",), x="t", y="S",
                          overlays=("S_theory",), output="fig04.png")
    out = render(recipe, data_root=data_root, outdir=tmp_path / "img")
    with open(out, "rb") as fh:
        assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


def test_render_plots_series_unchanged(data_root, tmp_path):
    """The plotted line data equal the stored table values exactly."""
    import matplotlib.pyplot as plt

    recipe = FigureRecipe(figure=4, tables=("obs.csv",), x="t", y="S",
                          overlays=("S_theory",), output="f.png")
    _, cols = read_table(data_root / "obs.csv")

    captured = []
    original = plt.Axes.plot

    def spy(self, x, y, *args, **kwargs):
        captured.append((np.asarray(x), np.asarray(y)))
        return original(self, x, y, *args, **kwargs)

    plt.Axes.plot = spy
    try:
        render(recipe, data_root=data_root, outdir=tmp_path)
    finally:
        plt.Axes.plot = original

    assert np.array_equal(captured[0][0], cols["t"])
    assert np.array_equal(captured[0][1], cols["S"])
    assert np.array_equal(captured[1][1], cols["S_theory"])


def test_render_deterministic(data_root, tmp_path):
    recipe = FigureRecipe(figure=4, tables=("obs.csv",), x="t", y="S",
                          output="f.png")
    a = render(recipe, data_root=data_root, outdir=tmp_path / "a")
    b = render(recipe, data_root=data_root, outdir=tmp_path / "b")
    with open(a, "rb") as fa, open(b, "rb") as fb:
        assert fa.read() == fb.read()


def test_missing_column_named(data_root, tmp_path):
    recipe = FigureRecipe(figure=4, tables=("obs.csv",), x="t", y="what",
                          output="f.png")
    with pytest.raises(TableError, match="'what'"):
        render(recipe, data_root=data_root, outdir=tmp_path)


def test_multi_panel_render(data_root, tmp_path):
    recipe = FigureRecipe(figure=5, tables=("obs.csv", "obs.csv"),
                          x="t", y="S", output="f.png")
    out = render(recipe, data_root=data_root, outdir=tmp_path)
    assert out.endswith("f.png")
