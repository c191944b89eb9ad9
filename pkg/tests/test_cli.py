"""Command-line layer: config parsing, pipeline bundles, exit codes."""

import hashlib
import json
import math

import pytest

from shellcap.cli import (
    ConfigError,
    ExperimentConfig,
    ReportBundle,
    _float_list,
    _g17,
    _json_line,
    build_config,
    emit_report,
    main,
    parse_form,
    read_config_file,
    run_experiment,
)
from shellcap.linalg import QuadraticForm


# ---------------------------------------------------------------------------
# formatting


def test_g17_round_trips_floats():
    for x in (0.1, 1 / 3, 2.0**-52, 12345.6789e20, -7.25):
        assert float(_g17(x)) == x
    assert _g17(30) == "30"
    assert _g17(True) == "true"
    assert _g17(math.inf) == "inf"
    assert _g17(-math.inf) == "-inf"
    assert _g17(math.nan) == "nan"


def test_json_line_is_valid_json_with_quoted_specials():
    line = _json_line({"a": 1, "b": [0.5, None], "c": {"d": "x"}})
    assert json.loads(line) == {"a": 1, "b": [0.5, None], "c": {"d": "x"}}
    assert _json_line({"a": math.inf}) == '{"a":"inf"}'


def test_float_list_accepts_fractions_and_inf():
    assert _float_list("1/4, 0.5,, inf") == (0.25, 0.5, math.inf)


# ---------------------------------------------------------------------------
# form specs and config files


def test_parse_form_variants(tmp_path):
    assert parse_form("identity").exact == QuadraticForm.identity().exact
    assert parse_form("diag:1,2,3").exact == QuadraticForm.diagonal(1, 2, 3).exact
    inline = parse_form("2,1,0,1,2,0,0,0,3")
    assert inline.exact == QuadraticForm(
        [[2, 1, 0], [1, 2, 0], [0, 0, 3]]).exact
    f3 = tmp_path / "diag.txt"
    f3.write_text("1 2 5\n")
    assert parse_form(str(f3)).exact == QuadraticForm.diagonal(1, 2, 5).exact
    f9 = tmp_path / "full.txt"
    f9.write_text("2 1 0\n1 2 0\n0 0 3\n")
    assert parse_form(str(f9)).exact == inline.exact


def test_parse_form_rejects_bad_specs(tmp_path):
    with pytest.raises(ConfigError):
        parse_form("diag:1,2")
    with pytest.raises(ConfigError):
        parse_form("1,2,3,4,5")
    with pytest.raises(ConfigError):
        parse_form("no-such-file-or-keyword")
    f = tmp_path / "four.txt"
    f.write_text("1 2 3 4")
    with pytest.raises(ConfigError):
        parse_form(str(f))


def test_read_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# experiment grid\n"
        "lambda = 5\n"
        "delta = 0.05   # one width\n"
        "\n"
        "modules = shell\n"
    )
    assert read_config_file(cfg) == {
        "lambda": "5",
        "delta": "0.05",
        "modules": "shell",
    }
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n")
    with pytest.raises(ConfigError, match="expected key = value"):
        read_config_file(bad)


def test_build_config_overrides_beat_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 5\ndelta = 0.05\nmodules = shell\n")
    c = build_config(str(cfg), lams=(8.0,))
    assert c.lams == (8.0,)
    assert c.deltas == (0.05,)
    assert c.modules == ("shell",)


def test_build_config_rejects_unknown_key_and_bad_value(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 5\ndelta = 0.05\nwidgets = 3\n")
    with pytest.raises(ConfigError, match="unknown config key"):
        build_config(str(cfg))
    cfg.write_text("lambda = five\ndelta = 0.05\n")
    with pytest.raises(ConfigError, match="bad value"):
        build_config(str(cfg))


# ---------------------------------------------------------------------------
# config validation and the grid


def test_exponent_rule_pairs():
    c = build_config(None, lams=(64.0, 128.0), delta_exp=-0.5,
                     modules=("shell",))
    pairs = c.pairs()
    assert pairs[0] == (64.0, 0.125)
    assert pairs[1][1] == pytest.approx(0.08838834764831845, rel=1e-15)


def test_absolute_deltas_cross_product_order():
    c = build_config(None, lams=(8.0, 16.0), deltas=(0.5, 0.25),
                     modules=("shell",))
    assert c.pairs() == ((8.0, 0.5), (8.0, 0.25), (16.0, 0.5), (16.0, 0.25))


@pytest.mark.parametrize(
    "kw, msg",
    [
        (dict(lams=(8.0,), deltas=(0.5,), delta_exp=-0.5), "not both"),
        (dict(lams=(8.0,), deltas=(0.5,), modules=("shell", "bogus")),
         "unknown module"),
        (dict(lams=(8.0,), deltas=(0.5,), threads=0), "threads"),
        (dict(lams=(8.0,), deltas=(0.5,), energy_r=1), "energy r"),
        (dict(lams=(8.0,), deltas=(0.5,), samples=0), "samples"),
        (dict(lams=(8.0,), deltas=(0.5,), quasimode="wave"), "quasimode"),
        (dict(deltas=(0.5,)), "no lambda values"),
        (dict(lams=(8.0,)), "no delta rule"),
        (dict(lams=(1.0,), deltas=(0.5,)), "lambda must exceed 1"),
        (dict(lams=(8.0,), deltas=(1.0,)), "delta must lie in"),
        (dict(lams=(8.0,), deltas=(0.0,)), "delta must lie in"),
        (dict(lams=(8.0,), deltas=(0.5,), ps=(1.5,)), "p must be >= 2"),
    ],
)
def test_validation_errors(kw, msg):
    with pytest.raises(ConfigError, match=msg):
        build_config(None, **kw)


def test_region_only_config_needs_no_grid():
    c = ExperimentConfig(modules=("region",)).validate()
    assert c.pairs() == ()


def test_config_hash_ignores_threads():
    a = build_config(None, lams=(8.0,), deltas=(0.5,), threads=1)
    b = build_config(None, lams=(8.0,), deltas=(0.5,), threads=8)
    c = build_config(None, lams=(16.0,), deltas=(0.5,), threads=1)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()


# ---------------------------------------------------------------------------
# pipeline bundles


def test_shell_bundle_spot_count():
    cfg = build_config(None, lams=(5.0,), deltas=(0.05,), modules=("shell",))
    bundle = run_experiment(cfg)
    assert set(bundle.artifacts) == {"shell.csv"}
    lines = bundle.artifacts["shell.csv"].splitlines()
    assert lines[0] == "lambda,delta,count,ratio"
    assert len(lines) == 2
    lam, delta, count, ratio = lines[1].split(",")
    assert count == "30"
    assert float(ratio) == 30 / (25 * 0.05)


def test_rerun_reproduces_bytes_and_hashes():
    cfg = build_config(None, lams=(8.0,), deltas=(0.25,),
                       modules=("shell", "caps", "region"))
    one = run_experiment(cfg)
    two = run_experiment(cfg)
    assert one.artifacts == two.artifacts
    assert one.manifest["files"] == two.manifest["files"]
    assert one.manifest["config_hash"] == cfg.config_hash()


def test_worker_count_never_changes_bytes():
    base = dict(lams=(8.0, 10.0, 12.0), deltas=(0.25,),
                modules=("shell", "caps"))
    serial = run_experiment(build_config(None, threads=1, **base))
    pooled = run_experiment(build_config(None, threads=4, **base))
    assert serial.artifacts == pooled.artifacts


def test_manifest_hashes_match_artifact_bytes():
    cfg = build_config(None, lams=(5.0,), deltas=(0.05,), modules=("shell",))
    bundle = run_experiment(cfg)
    assert bundle.manifest["tool"] == "shellcap"
    for name, digest in bundle.manifest["files"].items():
        assert digest == hashlib.sha256(
            bundle.artifacts[name].encode()).hexdigest()


def test_norms_record_fields():
    cfg = build_config(None, lams=(8.0,), deltas=(0.25,), ps=(4.0,),
                       modules=("norms",))
    bundle = run_experiment(cfg)
    (line,) = bundle.artifacts["norms.jsonl"].splitlines()
    rec = json.loads(line)
    assert {"lambda", "delta", "p", "ratio", "bound", "regime",
            "method"} <= set(rec)
    assert rec["method"] == "even-exact"
    assert rec["quasimode"] == "point"
    assert rec["ratio"] <= rec["bound"] * 10


def test_expsum_rows_blank_outside_window():
    cfg = build_config(None, lams=(8.0,), deltas=(0.5,), samples=2,
                       modules=("expsum",))
    bundle = run_experiment(cfg)
    lines = bundle.artifacts["expsum.csv"].splitlines()
    assert lines[0] == "lambda,delta,M,x_index,abs_S,ratio_trivial,ratio_guo"
    # dyadic M = 1,2,4,8 at two base points each
    assert len(lines) == 1 + 4 * 2
    for line in lines[1:]:
        parts = line.split(",")
        m = int(parts[2])
        # 8^(2/7) ~ 1.81: the window bound is blank only at M = 1
        assert (parts[6] == "") == (m == 1)


def test_emit_report_formats(tmp_path):
    cfg = build_config(None, lams=(8.0,), deltas=(0.25,),
                       modules=("shell", "caps"))
    bundle = run_experiment(cfg)

    full = tmp_path / "full"
    written = {p.name for p in emit_report(bundle, full)}
    assert written == {"shell.csv", "caps.csv", "caps_summary.jsonl",
                       "manifest.json"}
    man = json.loads((full / "manifest.json").read_text())
    for name, digest in man["files"].items():
        assert hashlib.sha256(
            (full / name).read_bytes()).hexdigest() == digest

    csv_only = tmp_path / "csv"
    written = {p.name for p in emit_report(bundle, csv_only, formats="csv")}
    assert written == {"shell.csv", "caps.csv", "manifest.json"}

    json_only = tmp_path / "json"
    written = {p.name for p in emit_report(bundle, json_only, formats="json")}
    assert written == {"caps_summary.jsonl", "manifest.json"}


def test_empty_bundle_emits_manifest_only(tmp_path):
    cfg = ExperimentConfig(modules=("region",)).validate()
    bundle = ReportBundle(config=cfg)
    bundle.manifest = {"tool": "shellcap", "files": {}}
    written = emit_report(bundle, tmp_path / "empty")
    assert [p.name for p in written] == ["manifest.json"]


# ---------------------------------------------------------------------------
# subcommands and exit codes


def test_cmd_shell_stdout_and_points(tmp_path, capsys):
    out = tmp_path / "a"
    rc = main(["shell", "--lambda", "5", "--delta", "0.05", "--points",
               "--out", str(out)])
    assert rc == 0
    rec = json.loads(capsys.readouterr().out.splitlines()[0])
    assert rec["count"] == 30
    shell_lines = (out / "shell.csv").read_text().splitlines()
    assert shell_lines[0] == "lambda,delta,count,ratio"
    pts = (out / "points.csv").read_text().splitlines()
    assert pts[0] == "x1,x2,x3"
    assert len(pts) == 1 + 30


def test_cmd_caps_writes_expected_files(tmp_path, capsys):
    out = tmp_path / "caps"
    rc = main(["caps", "--lambda", "16", "--delta-exp", "-0.5",
               "--out", str(out)])
    assert rc == 0
    text = (out / "caps.csv").read_text()
    assert text.splitlines()[0] == "lambda,delta,rank,s,count"
    summary = json.loads((out / "caps_summary.jsonl").read_text())
    assert summary["n_points"] > 0
    assert capsys.readouterr().out.startswith("lambda,delta,rank,s,count")


def test_cmd_region_default_grid(capsys):
    assert main(["region"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p,exponent,piece_id"
    first = lines[1].split(",")
    assert float(first[0]) == 2.0 and float(first[1]) == -1.0
    by_p = {line.split(",")[0]: line.split(",") for line in lines[1:]}
    assert float(by_p["5"][1]) == -0.5
    assert "inf" in by_p
    assert float(by_p["inf"][1]) == pytest.approx(-85 / 158, rel=1e-15)


def test_cmd_oracle_curve_and_annulus(capsys):
    rc = main(["oracle", "curve", "--curve", "circle", "--x-max", "16",
               "--y-scale", "16", "--band", "0.1"])
    assert rc == 0
    head = capsys.readouterr().out.splitlines()[0]
    assert head.startswith("curve,x_max,y_scale,band,count")
    rc = main(["oracle", "annulus", "--q", "2,1,3", "--a-scale", "8",
               "--b-scale", "8", "--eta", "0.05"])
    assert rc == 0
    assert capsys.readouterr().out.splitlines()[0].startswith("q1,q2,q3")


def test_cmd_run_full_pipeline(tmp_path, capsys):
    out = tmp_path / "bundle"
    rc = main(["run", "--lambda", "8", "--delta", "0.25",
               "--modules", "shell,caps,region", "--out", str(out)])
    assert rc == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"shell.csv", "caps.csv", "caps_summary.jsonl",
                     "region.csv", "manifest.json"}
    printed = capsys.readouterr().out
    assert "manifest.json" in printed


def test_exit_code_on_config_error(capsys):
    assert main(["shell", "--lambda", "0.5", "--delta", "0.05"]) == 2
    assert "config error" in capsys.readouterr().err
    assert main(["run", "--out", "/tmp/unused-bundle"]) == 2
    assert main(["oracle", "curve", "--curve", "nope"]) == 2
    assert main(["oracle", "annulus", "--q", "1,2"]) == 2
    assert main(["oracle", "ratios", "--lambda", "16", "--delta", "0.25",
                 "--bound", "bogus"]) == 2


def test_exit_code_on_guard(capsys):
    # the cubed upper-cone size blows the convolution guard immediately
    rc = main(["energy", "--lambda", "40", "--delta", "0.5", "--r", "3"])
    assert rc == 3
    assert "guard violation" in capsys.readouterr().err
