import subprocess
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

SCRIPT = Path(__file__).resolve().parents[1] / "render.py"

REGION_GRID = ("2,2.5,3,3.5,4,4.2,4.5,4.7,4.9,4.99,5,5.5,6,"
               "8,10,20,49,100,1000,inf")


def _cli(args, out):
    proc = subprocess.run(
        [sys.executable, "-m", "shellcap.cli", *args, "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return out


def render_script(src, out):
    return subprocess.run(
        [sys.executable, str(SCRIPT), "--in", str(src), "--out", str(out)],
        capture_output=True, text=True)


@pytest.fixture(autouse=True)
def _close_figures():
    yield
    plt.close("all")


@pytest.fixture(scope="session")
def golden_run(tmp_path_factory):
    """Reference bundle produced by the pipeline CLI itself."""
    out = tmp_path_factory.mktemp("golden_run")
    return _cli(["run", "--lambda", "16,32,64", "--delta-exp", "-0.5",
                 "--p", "4", "--samples", "2",
                 "--modules", "shell,caps,ratios,expsum"], out)


@pytest.fixture(scope="session")
def golden_region(tmp_path_factory):
    out = tmp_path_factory.mktemp("golden_region")
    return _cli(["region", "--p-grid", REGION_GRID], out)


@pytest.fixture(scope="session")
def rendered_run(golden_run, tmp_path_factory):
    out = tmp_path_factory.mktemp("rendered_run")
    proc = render_script(golden_run, out)
    assert proc.returncode == 0, proc.stderr
    return out


@pytest.fixture(scope="session")
def rendered_region(golden_region, tmp_path_factory):
    out = tmp_path_factory.mktemp("rendered_region")
    proc = render_script(golden_region, out)
    assert proc.returncode == 0, proc.stderr
    return out
