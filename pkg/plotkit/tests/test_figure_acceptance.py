"""Acceptance criterion 11: all six figure analogs regenerate from the
preset CSV artifacts without error, with asymptote overlays equal to the CSV
metadata values exactly."""

import shutil
import subprocess

import pytest

from plotkit.csvdata import load_csv
from plotkit.recipes import reference_figures
from plotkit.render import render

pytestmark = pytest.mark.skipif(
    shutil.which("magnogyro") is None,
    reason="simulator CLI not on PATH; cannot generate preset artifacts")


@pytest.fixture(scope="module")
def artifact_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts")
    subprocess.run(["magnogyro", "--out", str(out), "figure", "all"],
                   check=True, capture_output=True, text=True, timeout=1800)
    return out


def test_criterion_11_figure_analogs(artifact_dir, tmp_path):
    for fid, recipe in reference_figures().items():
        result = render(recipe, artifact_dir, tmp_path)
        assert result.png.exists() and result.png.stat().st_size > 0
        assert result.svg.exists() and result.svg.stat().st_size > 0
        assert all(n > 0 for n in result.points_plotted.values())

    # asymptote overlays are the CSV metadata values, bit for bit
    _, meta = load_csv(artifact_dir / "fig3a.csv")
    fig3 = render(reference_figures()["fig3"], artifact_dir, tmp_path)
    (panel_title,) = [k for k, v in fig3.overlays.items() if v]
    assert fig3.overlays[panel_title] == [
        float(meta["asymptote_h_G0.5"]), float(meta["asymptote_h_G1"])]
