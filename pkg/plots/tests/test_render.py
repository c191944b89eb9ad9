"""Renderer tests: golden-bundle checks plus synthetic-CSV behavior.

The golden bundles come from the pipeline CLI (see conftest), so these
tests exercise the renderer strictly through the documented file formats.
Expected boundary heights below are derived by hand from the piecewise
threshold formulas, not imported from the library.
"""

import csv

import pytest

from conftest import render_script
from render import (CAPS_HEADER, RATIOS_HEADER, read_rows, render_histograms,
                    render_ratio_curves, render_region)

_CAP = None


@pytest.fixture(autouse=True)
def _live_output(capfd):
    global _CAP
    _CAP = capfd
    yield
    _CAP = None


def _verdict(num, label, ok):
    line = f"[{'PASS' if ok else 'FAIL'}] {num:02d} {label}"
    if _CAP is not None:
        with _CAP.disabled():
            print(line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# --- golden-bundle gates ----------------------------------------------------

def test_region_boundary_golden(rendered_region):
    rows = _read_csv(rendered_region / "region_boundary.csv")
    assert rows[0] == ["p", "boundary_y"]
    got = {float(p): float(y) for p, y in rows[1:] if p != "inf"}
    # hand-derived: -exponent at p = 3, 21/5, 47/10, 6, 49, 1000
    expected = {
        3.0: 1.0,
        4.2: 1013 / 1144,
        4.7: 13 / 20,
        6.0: 0.5,
        49.0: 0.5,
        1000.0: 14107 / 26312,
    }
    ok = all(abs(got[p] - want) < 1e-9 for p, want in expected.items())
    crows = _read_csv(rendered_region / "region_curve.csv")[1:]
    xs = [float(x) for x, _ in crows]
    ys = [float(y) for _, y in crows]
    # curve pinned at (1/6, 1) and (1/4, 0)
    ok = ok and abs(xs[0] - 1 / 6) < 1e-15 and abs(ys[0] - 1.0) < 1e-9
    ok = ok and xs[-1] == 0.25 and abs(ys[-1]) < 1e-9
    _verdict(14, "region boundary heights and critical curve", ok)


def test_layers_byte_identical(golden_run, rendered_run, golden_region,
                               rendered_region):
    pairs = [
        (golden_run / "caps.csv", rendered_run / "caps_data.csv"),
        (golden_run / "ratios.csv", rendered_run / "ratios_data.csv"),
        (golden_run / "expsum.csv", rendered_run / "expsum_data.csv"),
        (golden_region / "region.csv", rendered_region / "region_data.csv"),
    ]
    ok = all(a.read_bytes() == b.read_bytes() for a, b in pairs)
    _verdict(15, "data layers byte-identical to bundle CSVs", ok)


def test_histogram_heights_match_census(golden_run, tmp_path):
    figs = render_histograms(golden_run / "caps.csv", tmp_path)
    rows = read_rows(golden_run / "caps.csv", CAPS_HEADER)
    groups = {}
    for lam, delta, rank, s, count in rows:
        groups.setdefault((lam, delta), {}).setdefault(
            int(rank), []).append((int(s), int(count)))
    assert set(figs) == set(groups)
    for key, by_rank in groups.items():
        fig = figs[key]
        assert len(fig.axes) == len(by_rank)
        for ax, rank in zip(fig.axes, sorted(by_rank)):
            bars = sorted(
                (round(p.get_x() + p.get_width() / 2), round(p.get_height()))
                for p in ax.patches)
            assert bars == sorted(by_rank[rank])


def test_region_jump_drawn_vertical(golden_region, tmp_path):
    fig = render_region(golden_region / "region.csv", tmp_path)
    line = fig.axes[0].lines[0]
    xs = list(line.get_xdata())
    ys = list(line.get_ydata())
    hits = [i for i in range(len(xs) - 1)
            if xs[i] == 0.2 and xs[i + 1] == 0.2]
    assert len(hits) == 1
    i = hits[0]
    # drop from just under the piece-4 limit down to 1/2
    assert ys[i] > ys[i + 1] == 0.5
    assert ys[i] - 0.5 > 0.01


def test_script_renders_run_bundle(rendered_run):
    for name in ("caps_hist_0.png", "ratios.png", "expsum.png",
                 "caps_data.csv", "ratios_data.csv", "expsum_data.csv"):
        assert (rendered_run / name).exists()


# --- synthetic censuses -----------------------------------------------------

def test_empty_census_renders_blank(tmp_path):
    src = tmp_path / "caps.csv"
    src.write_text("lambda,delta,rank,s,count\n")
    figs = render_histograms(src, tmp_path / "out")
    assert len(figs) == 1
    assert (tmp_path / "out" / "caps_hist_0.png").exists()
    assert not figs[None].axes[0].patches


def test_single_bin_single_bar(tmp_path):
    src = tmp_path / "caps.csv"
    src.write_text("lambda,delta,rank,s,count\n8,0.35,2,3,7\n")
    figs = render_histograms(src, tmp_path / "out")
    (ax,) = figs[("8", "0.35")].axes
    (bar,) = ax.patches
    assert round(bar.get_x() + bar.get_width() / 2) == 3
    assert bar.get_height() == 7


# --- synthetic ratio curves -------------------------------------------------

def test_constant_ratio_series_horizontal(tmp_path):
    src = tmp_path / "ratios.csv"
    src.write_text(
        "lambda,delta,bound_id,s,observed,bound,ratio\n"
        "16,0.25,main,0,1,0.5,2.0\n"
        "32,0.18,main,0,1,0.5,2.0\n"
        "64,0.125,main,2,1,0.5,2.0\n"
        "16,0.25,alt,0,3,1,3.0\n"
        "64,0.125,alt,1,7,2,3.5\n")
    figs = render_ratio_curves(src, None, tmp_path / "out")
    lines = {ln.get_label(): ln for ln in figs["ratios"].axes[0].lines}
    assert list(lines["main"].get_ydata()) == [2.0, 2.0, 2.0]
    assert list(lines["main"].get_xdata()) == [16.0, 32.0, 64.0]
    # two lambdas give a two-point polyline
    assert list(lines["alt"].get_xdata()) == [16.0, 64.0]
    assert list(lines["alt"].get_ydata()) == [3.0, 3.5]


def test_expsum_blank_refined_column_skipped(tmp_path):
    src = tmp_path / "expsum.csv"
    src.write_text(
        "lambda,delta,M,x_index,abs_S,ratio_trivial,ratio_guo\n"
        "16,0.25,1,0,5.0,0.5,\n"
        "32,0.18,1,0,7.0,0.6,0.9\n"
        "32,0.18,2,1,3.0,0.4,0.7\n")
    figs = render_ratio_curves(None, src, tmp_path / "out")
    lines = {ln.get_label(): ln for ln in figs["expsum"].axes[0].lines}
    assert list(lines["trivial"].get_xdata()) == [16.0, 32.0]
    assert list(lines["trivial"].get_ydata()) == [0.5, 0.6]
    assert list(lines["refined window"].get_xdata()) == [32.0]
    assert list(lines["refined window"].get_ydata()) == [0.9]


# --- synthetic regions ------------------------------------------------------

def test_subcritical_band(tmp_path):
    src = tmp_path / "region.csv"
    src.write_text("p,exponent,piece_id\n2,-1,1\n3,-1,1\n4,-1,1\n")
    fig = render_region(src, tmp_path / "out")
    ax = fig.axes[0]
    line = ax.lines[0]
    assert list(line.get_ydata()) == [1.0, 1.0, 1.0]
    xs = list(line.get_xdata())
    assert min(xs) == 0.25 and max(xs) == 0.5 and 0.2 not in xs
    assert ax.collections  # shaded band present


def test_region_without_piece4_row_has_no_vertical(tmp_path):
    src = tmp_path / "region.csv"
    src.write_text("p,exponent,piece_id\n4,-1,1\n6,-0.5,5\n")
    fig = render_region(src, tmp_path / "out")
    xs = list(fig.axes[0].lines[0].get_xdata())
    assert 0.2 not in xs


# --- malformed inputs -------------------------------------------------------

def test_wrong_header_raises(tmp_path):
    src = tmp_path / "caps.csv"
    src.write_text("lam,delta,rank,s,count\n8,0.35,2,3,7\n")
    with pytest.raises(ValueError, match="malformed"):
        render_histograms(src, tmp_path / "out")


def test_ragged_row_raises(tmp_path):
    src = tmp_path / "region.csv"
    src.write_text("p,exponent,piece_id\n2,-1\n")
    with pytest.raises(ValueError, match="row 2"):
        render_region(src, tmp_path / "out")


def test_script_exit_codes(tmp_path):
    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "region.csv").write_text("p,exponent\n2,-1\n")
    proc = render_script(bad, tmp_path / "out")
    assert proc.returncode == 2
    assert "malformed" in proc.stderr

    empty = tmp_path / "empty"
    empty.mkdir()
    proc = render_script(empty, tmp_path / "out2")
    assert proc.returncode == 2
