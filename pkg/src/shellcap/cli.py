"""Command-line front end: runs the shell / cap / oracle / energy / norm /
exponential-sum pipelines over parameter grids and writes the CSV and JSONL
reports the plot layer and the test suite consume.

Everything here is deterministic: no RNG, no environment lookups, grid cells
ordered by index regardless of worker scheduling, floats printed with 17
significant digits.  Exit codes: 0 success, 2 configuration error, 3 a size
guard tripped.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from .caps import build_cover, census, classify_cap, rank2_invariant_ratios
from .energy import GuardExceeded, energy_conjecture_report
from .expsum import expsum_bound_report
from .linalg import QuadraticForm
from .norms import (
    conjectured_bound,
    l2_norm,
    lp_norm_even,
    lp_norm_grid,
    make_quasimode,
    proven_region_threshold,
    regime_classify,
)
from .oracles import (
    BOUNDS,
    CURVES,
    CurveSpec,
    annulus_report,
    bound_ratio_report,
    count_near_curve,
    huxley_bound,
    huxley_window,
    vdc_bound,
)
from .shell import enumerate_shell, shell_census

TOOL_VERSION = "0.1.0"

# grids larger than this per axis would need multi-GB scratch arrays
_GRID_AXIS_LIMIT = 256


class ConfigError(ValueError):
    pass


# --- formatting -------------------------------------------------------------

def _g17(x):
    """Round-trip-safe text for one value."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _jval(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        t = _g17(v)
        # bare inf/nan are not JSON; quote them
        return f'"{t}"' if t in ("inf", "-inf", "nan") else t
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ",".join(
            f"{json.dumps(str(k))}:{_jval(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_jval(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v)}")


def _json_line(record):
    return _jval(record)


def _csv_text(header, rows):
    lines = [header]
    lines.extend(",".join(_g17(v) if not isinstance(v, str) else v
                          for v in row) for row in rows)
    return "\n".join(lines) + "\n"


# --- configuration ----------------------------------------------------------

ALL_MODULES = ("shell", "caps", "ratios", "energy", "norms", "expsum", "region")

_DEFAULT_REGION_GRID = tuple(
    [2.0 + 0.05 * i for i in range(int(round((8.0 - 2.0) / 0.05)) + 1)]
    + [8.5 + 0.5 * i for i in range(int(round((50.0 - 8.5) / 0.5)) + 1)]
    + [math.inf]
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one deterministic pipeline run."""

    form_spec: str = "identity"
    lams: tuple = ()
    deltas: tuple = ()            # absolute values; exclusive with delta_exp
    delta_exp: float | None = None
    ps: tuple = (4.0, 6.0)
    modules: tuple = ALL_MODULES
    out: str | None = None
    threads: int = 1
    energy_r: int = 2
    full_shell: bool = False
    samples: int = 8
    quasimode: str = "point"
    region_grid: tuple = _DEFAULT_REGION_GRID

    def form(self):
        return parse_form(self.form_spec)

    def pairs(self):
        """(lam, delta) grid cells in order; exponent rule applied first."""
        out = []
        for lam in self.lams:
            if self.delta_exp is not None:
                out.append((lam, lam ** self.delta_exp))
            else:
                out.extend((lam, d) for d in self.deltas)
        return tuple(out)

    def validate(self):
        if self.delta_exp is not None and self.deltas:
            raise ConfigError("give either deltas or delta_exp, not both")
        for m in self.modules:
            if m not in ALL_MODULES:
                raise ConfigError(f"unknown module {m!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.energy_r < 2:
            raise ConfigError("energy r must be >= 2")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.quasimode not in ("point", "caps"):
            raise ConfigError("quasimode must be point or caps")
        needs_grid = any(m != "region" for m in self.modules)
        if needs_grid and not self.lams:
            raise ConfigError("no lambda values configured")
        if needs_grid and self.delta_exp is None and not self.deltas:
            raise ConfigError("no delta rule configured")
        for lam, delta in self.pairs():
            if not lam > 1:
                raise ConfigError(f"lambda must exceed 1, got {_g17(lam)}")
            if not 0 < delta < 1:
                raise ConfigError(
                    f"delta must lie in (0, 1), got {_g17(delta)} "
                    f"at lambda {_g17(lam)}")
        for p in self.ps:
            if p != math.inf and p < 2:
                raise ConfigError(f"p must be >= 2, got {_g17(p)}")
        return self

    def canonical_text(self):
        items = [
            ("form", self.form_spec),
            ("lambda", ",".join(_g17(v) for v in self.lams)),
            ("delta", ",".join(_g17(v) for v in self.deltas)),
            ("delta_exp", "" if self.delta_exp is None else _g17(self.delta_exp)),
            ("p", ",".join(_g17(v) for v in self.ps)),
            ("modules", ",".join(self.modules)),
            # threads deliberately left out: it never changes any output byte
            ("energy_r", str(self.energy_r)),
            ("full_shell", _g17(self.full_shell)),
            ("samples", str(self.samples)),
            ("quasimode", self.quasimode),
            ("region_grid", ",".join(_g17(v) for v in self.region_grid)),
        ]
        return "".join(f"{k}={v}\n" for k, v in items)

    def config_hash(self):
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()


def parse_form(spec):
    """Form spec: 'identity', 'diag:a,b,c', nine comma-separated entries
    (row major, symmetric), or a path to a file holding 3 or 9 numbers."""
    spec = spec.strip()
    if spec == "identity":
        return QuadraticForm.identity()
    try:
        if spec.startswith("diag:"):
            vals = [_num(t) for t in spec[5:].split(",")]
            if len(vals) != 3:
                raise ConfigError("diag: needs three entries")
            return QuadraticForm.diagonal(*vals)
        if "," in spec:
            vals = [_num(t) for t in spec.split(",")]
            if len(vals) != 9:
                raise ConfigError("inline form needs nine entries")
            return QuadraticForm([vals[0:3], vals[3:6], vals[6:9]])
        path = Path(spec)
        if path.is_file():
            vals = [_num(t) for t in path.read_text().split()]
            if len(vals) == 3:
                return QuadraticForm.diagonal(*vals)
            if len(vals) == 9:
                return QuadraticForm([vals[0:3], vals[3:6], vals[6:9]])
            raise ConfigError(f"form file {spec} must hold 3 or 9 numbers")
    except ValueError as exc:
        raise ConfigError(f"bad form spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad form spec {spec!r}")


def _num(tok):
    return float(Fraction(tok.strip()))


def _float_list(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(math.inf if tok in ("inf", "Inf") else float(Fraction(tok)))
    return tuple(out)


def read_config_file(path):
    """Plain key=value lines; '#' starts a comment; list values use commas."""
    data = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, val = (t.strip() for t in line.split("=", 1))
        data[key] = val
    return data


_CONFIG_KEYS = {
    "form": ("form_spec", str),
    "lambda": ("lams", _float_list),
    "delta": ("deltas", _float_list),
    "delta_exp": ("delta_exp", lambda s: float(Fraction(s))),
    "p": ("ps", _float_list),
    "modules": ("modules", lambda s: tuple(t.strip() for t in s.split(",") if t.strip())),
    "out": ("out", str),
    "threads": ("threads", int),
    "energy_r": ("energy_r", int),
    "full_shell": ("full_shell", lambda s: s.lower() in ("1", "true", "yes")),
    "samples": ("samples", int),
    "quasimode": ("quasimode", str),
    "region_grid": ("region_grid", _float_list),
}


def build_config(file_path=None, **overrides):
    fields = {}
    if file_path is not None:
        for key, val in read_config_file(file_path).items():
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            name, conv = _CONFIG_KEYS[key]
            try:
                fields[name] = conv(val)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"bad value for {key!r}: {val!r}") from exc
    for name, val in overrides.items():
        if val is not None:
            fields[name] = val
    return ExperimentConfig(**fields).validate()


# --- pipeline ---------------------------------------------------------------

@dataclass
class ReportBundle:
    """In-memory artifacts keyed by file name, plus the manifest."""

    config: ExperimentConfig
    artifacts: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)


def _cell_reports(config, lam, delta):
    """Everything derived from one (lam, delta) cell, keyed by artifact."""
    out = {}
    form = config.form()
    modules = config.modules
    need_shell = any(m in modules for m in ("shell", "caps", "ratios", "norms",
                                            "energy"))
    shell_ps = enumerate_shell(form, lam, delta) if need_shell else None
    if "shell" in modules:
        c = shell_census(shell_ps)
        out["shell.csv"] = [(lam, delta, c.count, c.ratio)]
    caps = None
    if "caps" in modules or "ratios" in modules:
        caps = build_cover(shell_ps)
        for cap in caps:
            classify_cap(cap)
    if "caps" in modules:
        cc = census(caps, lam=lam, delta=delta)
        out["caps.csv"] = [(lam, delta, r, s, n)
                           for (r, s), n in sorted(cc.hist.items())]
        rr = rank2_invariant_ratios(caps, lam=lam, delta=delta)
        out["caps_summary.jsonl"] = [{
            "lambda": lam, "delta": delta, "n_caps": cc.n_caps,
            "n_points": cc.n_points,
            "max_rho1": rr.max_rho1, "max_rho2": rr.max_rho2,
        }]
    if "ratios" in modules:
        cc = census(caps, lam=lam, delta=delta)
        rows = []
        for bound_id in sorted(BOUNDS):
            rep = bound_ratio_report(cc, bound_id)
            rows.extend((lam, delta, bound_id, s, obs, bound, ratio)
                        for s, obs, bound, ratio in rep.rows)
        out["ratios.csv"] = rows
    if "energy" in modules:
        rep = energy_conjecture_report(lam, delta, config.energy_r,
                                       full_shell=config.full_shell)
        out["energy.jsonl"] = [{
            "lambda": lam, "delta": delta, "r": rep.r,
            "set_size": rep.set_size, "E": rep.energy, "Z": rep.z_value,
            "k_star": list(rep.z_witness) if rep.z_witness else None,
            "bounds": {"energy": rep.energy_bound, "z": rep.z_bound},
            "ratios": {"energy": rep.energy_ratio, "z": rep.z_ratio},
            "upper_cone": rep.upper_cone,
        }]
    if "norms" in modules:
        out["norms.jsonl"] = _norm_rows(config, shell_ps, lam, delta)
    if "expsum" in modules:
        rep = expsum_bound_report(lam, delta, n_samples=config.samples)
        out["expsum.csv"] = [(lam, delta, m, xi, a, rt, "" if rg is None else rg)
                             for (m, xi, a, rt, rg) in rep.rows]
    return out


def _norm_rows(config, shell_ps, lam, delta):
    if config.quasimode == "point":
        modes = [("point", make_quasimode(shell_ps, "point"))]
    else:
        caps = build_cover(shell_ps)
        biggest = max(caps, key=lambda c: (len(c.members), c.center))
        modes = [("cap", make_quasimode(shell_ps, "cap", cap=biggest))]
    rows = []
    for p in config.ps:
        for kind, f in modes:
            norm_p, method = _norm_value(f, p, lam)
            witness = norm_p / l2_norm(f)
            bound = conjectured_bound(lam, delta, p).total
            rows.append({
                "lambda": lam, "delta": delta, "p": p,
                "ratio": witness, "bound": bound,
                "witness_over_bound": witness / bound,
                "regime": regime_classify(lam, delta, p),
                "method": method, "quasimode": kind,
            })
    return rows


def _norm_value(f, p, lam):
    half = p / 2.0
    if p != math.inf and half == int(half) and int(half) >= 1:
        return lp_norm_even(f, int(half)), "even-exact"
    pts, _ = f.support()
    maxc = max(abs(c) for q in pts for c in q)
    n_grid = 1
    while n_grid <= 2 * maxc:
        n_grid *= 2
    if n_grid > _GRID_AXIS_LIMIT:
        raise ConfigError(
            f"p={_g17(p)} needs a {n_grid}^3 quadrature grid at "
            f"lambda={_g17(lam)}; use an even integer p or a smaller lambda")
    return lp_norm_grid(f, p, n_grid=n_grid), "grid"


def _region_rows(config):
    rows = []
    for p in config.region_grid:
        rt = proven_region_threshold(p)
        rows.append((p, float(rt.exponent), rt.piece))
    return rows


_SCHEMAS = {
    "shell.csv": "lambda,delta,count,ratio",
    "caps.csv": "lambda,delta,rank,s,count",
    "ratios.csv": "lambda,delta,bound_id,s,observed,bound,ratio",
    "expsum.csv": "lambda,delta,M,x_index,abs_S,ratio_trivial,ratio_guo",
    "region.csv": "p,exponent,piece_id",
}


def run_experiment(config):
    """Execute the configured pipelines over the grid.

    Cells run in a thread pool but artifacts are assembled in grid order, so
    output bytes never depend on the worker count."""
    config.validate()
    pairs = config.pairs()
    if config.threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            cell_outputs = list(pool.map(
                lambda pair: _cell_reports(config, *pair), pairs))
    else:
        cell_outputs = [_cell_reports(config, *pair) for pair in pairs]

    merged = {}
    for cell in cell_outputs:
        for name, rows in cell.items():
            merged.setdefault(name, []).extend(rows)
    if "region" in config.modules:
        merged["region.csv"] = _region_rows(config)

    artifacts = {}
    for name in sorted(merged):
        rows = merged[name]
        if name.endswith(".csv"):
            artifacts[name] = _csv_text(_SCHEMAS[name], rows)
        else:
            artifacts[name] = "".join(_json_line(r) + "\n" for r in rows)

    bundle = ReportBundle(config=config, artifacts=artifacts)
    bundle.manifest = {
        "tool": "shellcap",
        "version": TOOL_VERSION,
        "config_hash": config.config_hash(),
        "created": datetime.now(timezone.utc).isoformat(),
        "files": {name: hashlib.sha256(text.encode()).hexdigest()
                  for name, text in sorted(artifacts.items())},
    }
    return bundle


def emit_report(bundle, out_dir, formats=None):
    """Write the bundle under out_dir; the manifest is always written.

    formats, if given, restricts emission: 'csv' keeps .csv artifacts,
    'json' keeps .json/.jsonl ones."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(bundle.artifacts.items()):
        if formats == "csv" and not name.endswith(".csv"):
            continue
        if formats == "json" and name.endswith(".csv"):
            continue
        path = out / name
        path.write_text(text, newline="\n")
        written.append(path)
    manifest_path = out / "manifest.json"
    manifest_path.write_text(_json_line(bundle.manifest) + "\n", newline="\n")
    written.append(manifest_path)
    return written


# --- subcommands ------------------------------------------------------------

def _pairs_from_args(args):
    cfg = build_config(
        None,
        form_spec=args.form,
        lams=_float_list(args.lam) if isinstance(args.lam, str) else args.lam,
        deltas=(_float_list(args.delta)
                if getattr(args, "delta", None) else ()),
        delta_exp=getattr(args, "delta_exp", None),
    )
    return cfg, cfg.pairs()


def cmd_shell(args):
    cfg, pairs = _pairs_from_args(args)
    form = cfg.form()
    rows = []
    point_rows = []
    for lam, delta in pairs:
        sp = enumerate_shell(form, lam, delta)
        c = shell_census(sp)
        rows.append((lam, delta, c.count, c.ratio))
        print(_json_line({"lambda": lam, "delta": delta, "count": c.count,
                          "ratio": c.ratio}))
        if args.points:
            point_rows.extend(sp.points)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "shell.csv").write_text(
            _csv_text(_SCHEMAS["shell.csv"], rows), newline="\n")
        if args.points:
            (out / "points.csv").write_text(
                _csv_text("x1,x2,x3", point_rows), newline="\n")
    return 0


def cmd_caps(args):
    cfg, pairs = _pairs_from_args(args)
    form = cfg.form()
    cap_rows = []
    summaries = []
    for lam, delta in pairs:
        sp = enumerate_shell(form, lam, delta)
        caps = build_cover(sp)
        for cap in caps:
            classify_cap(cap)
        cc = census(caps, lam=lam, delta=delta)
        cap_rows.extend((lam, delta, r, s, n)
                        for (r, s), n in sorted(cc.hist.items()))
        rr = rank2_invariant_ratios(caps, lam=lam, delta=delta)
        summaries.append({"lambda": lam, "delta": delta, "n_caps": cc.n_caps,
                          "n_points": cc.n_points, "max_rho1": rr.max_rho1,
                          "max_rho2": rr.max_rho2})
    text = _csv_text(_SCHEMAS["caps.csv"], cap_rows)
    sys.stdout.write(text)
    for s in summaries:
        print(_json_line(s))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "caps.csv").write_text(text, newline="\n")
        (out / "caps_summary.jsonl").write_text(
            "".join(_json_line(s) + "\n" for s in summaries), newline="\n")
    return 0


def cmd_oracle(args):
    if args.mode == "curve":
        if args.curve not in CURVES:
            raise ConfigError(f"unknown curve {args.curve!r}; "
                              f"choose from {sorted(CURVES)}")
        rows = []
        for x_max in _float_list(args.x_max):
            spec = CurveSpec.catalog(args.curve, x_max, args.y_scale, args.band)
            count = count_near_curve(spec)
            vdc = vdc_bound(spec)
            hux = huxley_bound(spec)
            rows.append((args.curve, x_max, args.y_scale, args.band, count,
                         vdc, hux, huxley_window(x_max, args.y_scale),
                         count / vdc if vdc else "", count / hux if hux else ""))
        text = _csv_text(
            "curve,x_max,y_scale,band,count,vdc,huxley,in_window,"
            "ratio_vdc,ratio_huxley", rows)
        sys.stdout.write(text)
        _maybe_write(args.out, "oracle_curve.csv", text)
        return 0
    if args.mode == "annulus":
        q = _float_list(args.q)
        if len(q) != 3:
            raise ConfigError("--q needs three entries q1,q2,q3")
        rep = annulus_report(q[0], q[1], q[2], args.a_scale, args.b_scale,
                             args.eta)
        text = _csv_text(
            "q1,q2,q3,a_scale,b_scale,eta,count,bound_cbrt,bound_huxley,"
            "in_window",
            [(q[0], q[1], q[2], args.a_scale, args.b_scale, args.eta,
              rep.count, rep.bound_cbrt, rep.bound_huxley, rep.in_window)])
        sys.stdout.write(text)
        _maybe_write(args.out, "oracle_annulus.csv", text)
        return 0
    # ratios over the cap census
    cfg, pairs = _pairs_from_args(args)
    form = cfg.form()
    rows = []
    bound_ids = (tuple(t.strip() for t in args.bound.split(","))
                 if args.bound else tuple(sorted(BOUNDS)))
    for bid in bound_ids:
        if bid not in BOUNDS:
            raise ConfigError(f"unknown bound id {bid!r}; "
                              f"choose from {sorted(BOUNDS)}")
    for lam, delta in pairs:
        sp = enumerate_shell(form, lam, delta)
        caps = build_cover(sp)
        for cap in caps:
            classify_cap(cap)
        cc = census(caps, lam=lam, delta=delta)
        for bid in bound_ids:
            rep = bound_ratio_report(cc, bid)
            rows.extend((lam, delta, bid, s, obs, bound, ratio)
                        for s, obs, bound, ratio in rep.rows)
    text = _csv_text(_SCHEMAS["ratios.csv"], rows)
    sys.stdout.write(text)
    _maybe_write(args.out, "ratios.csv", text)
    return 0


def cmd_energy(args):
    cfg, pairs = _pairs_from_args(args)
    lines = []
    for lam, delta in pairs:
        rep = energy_conjecture_report(lam, delta, args.r,
                                       full_shell=args.full_shell)
        rec = {
            "lambda": lam, "delta": delta, "r": rep.r,
            "set_size": rep.set_size, "E": rep.energy, "Z": rep.z_value,
            "k_star": list(rep.z_witness) if rep.z_witness else None,
            "bounds": {"energy": rep.energy_bound, "z": rep.z_bound},
            "ratios": {"energy": rep.energy_ratio, "z": rep.z_ratio},
            "upper_cone": rep.upper_cone,
        }
        line = _json_line(rec)
        print(line)
        lines.append(line)
    _maybe_write(args.out, "energy.jsonl", "".join(l + "\n" for l in lines))
    return 0


def cmd_norms(args):
    quasimode = "caps" if args.quasimode == "caps" else "point"
    cfg = build_config(
        None, form_spec=args.form,
        lams=_float_list(args.lam),
        deltas=_float_list(args.delta) if args.delta else (),
        delta_exp=args.delta_exp,
        ps=_float_list(args.p),
        quasimode=quasimode,
    )
    form = cfg.form()
    lines = []
    for lam, delta in cfg.pairs():
        sp = enumerate_shell(form, lam, delta)
        for rec in _norm_rows(cfg, sp, lam, delta):
            line = _json_line(rec)
            print(line)
            lines.append(line)
    _maybe_write(args.out, "norms.jsonl", "".join(l + "\n" for l in lines))
    return 0


def cmd_region(args):
    grid = _float_list(args.p_grid) if args.p_grid else _DEFAULT_REGION_GRID
    cfg = ExperimentConfig(modules=("region",), region_grid=grid).validate()
    rows = _region_rows(cfg)
    text = _csv_text(_SCHEMAS["region.csv"], rows)
    sys.stdout.write(text)
    _maybe_write(args.out, "region.csv", text)
    return 0


def cmd_expsum(args):
    cfg, pairs = _pairs_from_args(args)
    rows = []
    for lam, delta in pairs:
        rep = expsum_bound_report(lam, delta, n_samples=args.samples)
        rows.extend((lam, delta, m, xi, a, rt, "" if rg is None else rg)
                    for (m, xi, a, rt, rg) in rep.rows)
    text = _csv_text(_SCHEMAS["expsum.csv"], rows)
    sys.stdout.write(text)
    _maybe_write(args.out, "expsum.csv", text)
    return 0


def cmd_run(args):
    cfg = build_config(
        args.config,
        form_spec=args.form,
        lams=_float_list(args.lam) if args.lam else None,
        deltas=_float_list(args.delta) if args.delta else None,
        delta_exp=args.delta_exp,
        ps=_float_list(args.p) if args.p else None,
        modules=(tuple(t.strip() for t in args.modules.split(","))
                 if args.modules else None),
        out=args.out,
        threads=args.threads,
        energy_r=args.r,
        samples=args.samples,
    )
    if cfg.out is None:
        raise ConfigError("run needs an output directory (--out or out=)")
    bundle = run_experiment(cfg)
    written = emit_report(bundle, cfg.out)
    for path in written:
        print(path)
    return 0


def _maybe_write(out, name, text):
    if out:
        p = Path(out)
        p.mkdir(parents=True, exist_ok=True)
        (p / name).write_text(text, newline="\n")


# --- argument parsing -------------------------------------------------------

def _add_grid_flags(sub):
    sub.add_argument("--lambda", dest="lam", required=True,
                     help="comma-separated lambda values")
    sub.add_argument("--delta", help="comma-separated absolute delta values")
    sub.add_argument("--delta-exp", dest="delta_exp", type=float,
                     help="delta rule delta = lambda^e")
    sub.add_argument("--form", default="identity",
                     help="identity | diag:a,b,c | nine entries | file")
    sub.add_argument("--out", help="artifact directory")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shellcap",
        description="lattice shell, cap, energy and norm experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("shell", help="enumerate a shell and report its census")
    _add_grid_flags(s)
    s.add_argument("--points", action="store_true",
                   help="also emit the point list (points.csv)")
    s.set_defaults(func=cmd_shell)

    s = sub.add_parser("caps", help="cap cover census and rank-2 invariants")
    _add_grid_flags(s)
    s.set_defaults(func=cmd_caps)

    s = sub.add_parser("oracle", help="counting oracles and bound ratios")
    s.add_argument("mode", choices=("curve", "annulus", "ratios"))
    s.add_argument("--curve", default="circle")
    s.add_argument("--x-max", dest="x_max", default="100")
    s.add_argument("--y-scale", dest="y_scale", type=float, default=100.0)
    s.add_argument("--band", type=float, default=0.0,
                   help="vertical closeness for curve counts")
    s.add_argument("--q", default="1,0,1", help="annulus form q1,q2,q3")
    s.add_argument("--a-scale", dest="a_scale", type=float, default=100.0)
    s.add_argument("--b-scale", dest="b_scale", type=float, default=100.0)
    s.add_argument("--eta", type=float, default=0.01)
    s.add_argument("--lambda", dest="lam", default="16",
                   help="for mode ratios")
    s.add_argument("--delta")
    s.add_argument("--delta-exp", dest="delta_exp", type=float)
    s.add_argument("--form", default="identity")
    s.add_argument("--bound", help="comma list of bound ids (default all)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("energy", help="additive energy vs conjectured growth")
    _add_grid_flags(s)
    s.add_argument("--r", type=int, default=2, help="representation length")
    s.add_argument("--full-shell", dest="full_shell", action="store_true",
                   help="use the full shell, not the upper cone")
    s.set_defaults(func=cmd_energy)

    s = sub.add_parser("norms", help="quasimode L^p norms vs conjecture")
    _add_grid_flags(s)
    s.add_argument("--p", default="4,6", help="comma-separated p values")
    s.add_argument("--quasimode", choices=("point", "caps"), default="point")
    s.set_defaults(func=cmd_norms)

    s = sub.add_parser("region", help="proven exponent over a p grid")
    s.add_argument("--p-grid", dest="p_grid",
                   help="comma-separated p values (inf allowed)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_region)

    s = sub.add_parser("expsum", help="dyadic oscillatory sums vs bounds")
    _add_grid_flags(s)
    s.add_argument("--samples", type=int, default=8,
                   help="base points per dyadic range")
    s.set_defaults(func=cmd_expsum)

    s = sub.add_parser("run", help="full pipeline over a config grid")
    s.add_argument("--config", help="key = value config file")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--delta")
    s.add_argument("--delta-exp", dest="delta_exp", type=float)
    s.add_argument("--p")
    s.add_argument("--form")
    s.add_argument("--modules", help="comma list from: " + ",".join(ALL_MODULES))
    s.add_argument("--out")
    s.add_argument("--threads", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--samples", type=int)
    s.set_defaults(func=cmd_run)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
