import numpy as np
import pytest

from plotkit.csvdata import CsvFormatError, load_csv
from plotkit.recipes import FigureRecipe, PanelSpec, reference_figures
from plotkit.render import RecipeError, render


def _write_csv(path, header, rows, metadata=()):
    lines = [f"# {k} = {v}" for k, v in metadata]
    lines.append(",".join(header))
    lines += [",".join(str(c) for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


@pytest.fixture
def artifact_dir(tmp_path):
    d = tmp_path / "artifacts"
    d.mkdir()
    x = np.linspace(0.0, 5.0, 40)
    _write_csv(d / "curve.csv", ["R", "value", "G"],
               [(f"{xi:.17g}", f"{np.exp(-xi):.17g}", "0.5") for xi in x],
               metadata=[("asymptote_low", 0.25), ("G", 0.5)])
    return d


class TestCsvLoading:
    def test_numeric_and_metadata(self, artifact_dir):
        cols, meta = load_csv(artifact_dir / "curve.csv")
        assert set(cols) == {"R", "value", "G"}
        assert meta["asymptote_low"] == "0.25"
        assert cols["R"].size == 40

    def test_empty_csv_is_loud(self, tmp_path):
        bad = tmp_path / "empty.csv"
        bad.write_text("a,b\n")
        with pytest.raises(CsvFormatError, match="empty"):
            load_csv(bad)

    def test_headerless_csv_is_loud(self, tmp_path):
        bad = tmp_path / "meta.csv"
        bad.write_text("# k = v\n")
        with pytest.raises(CsvFormatError, match="header"):
            load_csv(bad)

    def test_ragged_row_is_loud(self, tmp_path):
        bad = tmp_path / "ragged.csv"
        bad.write_text("a,b\n1,2\n3\n")
        with pytest.raises(CsvFormatError, match="width"):
            load_csv(bad)


class TestRender:
    def test_writes_png_and_svg(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "value",
                      asymptote_keys=("asymptote_low",), mark_minimum=True),
        ))
        result = render(recipe, artifact_dir, tmp_path / "out")
        assert result.png.exists() and result.png.stat().st_size > 0
        assert result.svg.exists() and result.svg.stat().st_size > 0

    def test_overlays_come_from_metadata_exactly(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "value", title="p",
                      asymptote_keys=("asymptote_low",)),
        ))
        result = render(recipe, artifact_dir, tmp_path / "out")
        _, meta = load_csv(artifact_dir / "curve.csv")
        assert result.overlays["p"] == [float(meta["asymptote_low"])]

    def test_missing_column_is_loud(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "nope"),
        ))
        with pytest.raises(RecipeError, match="nope"):
            render(recipe, artifact_dir, tmp_path / "out")

    def test_missing_metadata_key_is_loud(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "value", asymptote_keys=("absent",)),
        ))
        with pytest.raises(RecipeError, match="absent"):
            render(recipe, artifact_dir, tmp_path / "out")

    def test_grouping_splits_curves(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "value", group_by="G", title="p"),
        ))
        result = render(recipe, artifact_dir, tmp_path / "out")
        assert result.points_plotted["p"] == 40

    def test_rerender_plots_identical_data(self, artifact_dir, tmp_path):
        recipe = FigureRecipe("demo", (
            PanelSpec("curve.csv", "R", "value", title="p",
                      asymptote_keys=("asymptote_low",)),
        ))
        a = render(recipe, artifact_dir, tmp_path / "a")
        b = render(recipe, artifact_dir, tmp_path / "b")
        assert a.overlays == b.overlays
        assert a.points_plotted == b.points_plotted


class TestRecipeRegistry:
    def test_six_figures_defined(self):
        assert list(reference_figures()) == ["fig2", "fig3", "fig4", "fig5", "fig6"]

    def test_recipes_well_formed(self):
        for recipe in reference_figures().values():
            assert recipe.panels
            for panel in recipe.panels:
                assert panel.source.endswith(".csv")
                assert panel.x and panel.y
        with pytest.raises(ValueError):
            FigureRecipe("empty", ())
