"""Batch figure rendering for experiment bundles.

Reads the documented CSV artifacts from a bundle directory and writes
figures plus sidecar data layers.  The layers carry the source values
verbatim (byte for byte), so downstream checks can diff them against the
bundle; rendering adds nothing numeric beyond axis placement.  Single
threaded by design: figures are batch artifacts, not an app.

Usage: python3 plots/render.py --in BUNDLE_DIR --out FIG_DIR
"""

import argparse
import csv
import io
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

REGION_HEADER = ["p", "exponent", "piece_id"]
CAPS_HEADER = ["lambda", "delta", "rank", "s", "count"]
RATIOS_HEADER = ["lambda", "delta", "bound_id", "s", "observed", "bound",
                 "ratio"]
EXPSUM_HEADER = ["lambda", "delta", "M", "x_index", "abs_S", "ratio_trivial",
                 "ratio_guo"]


def read_rows(path, header):
    """Rows of a bundle CSV as raw strings; the header must match exactly."""
    text = Path(path).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != header:
        raise ValueError(f"malformed CSV {path}: expected header "
                         f"{','.join(header)}")
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(f"malformed CSV {path}: row {i} has "
                             f"{len(row)} fields")
    return rows[1:]


def _copy_layer(src, out_dir, name):
    """Verbatim byte copy of the source CSV next to the figures."""
    dst = Path(out_dir) / name
    dst.write_bytes(Path(src).read_bytes())
    return dst


def _g17(v):
    return format(float(v), ".17g")


# --- proven region ----------------------------------------------------------

CRITICAL_X_LO = 1.0 / 6.0   # curve hits y = 1 here
CRITICAL_X_HI = 0.25        # and y = 0 here


def critical_curve_y(x):
    return 1.0 / (2.0 * x) - 2.0


def render_region(region_csv, out_dir):
    """Threshold staircase over x = 1/p, shaded proven region below it, the
    critical curve overlaid, and the p = 5 jump drawn vertically when the
    sampling resolves it (a piece-4 row directly before p = 5)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = read_rows(region_csv, REGION_HEADER)
    if not rows:
        raise ValueError(f"malformed CSV {region_csv}: no data rows")

    def sort_key(row):
        return float("inf") if row[0] == "inf" else float(row[0])

    rows = sorted(rows, key=sort_key)
    xs, ys = [], []
    boundary = []  # (p string, boundary y) pairs, one per input row
    prev = None
    for p_s, e_s, piece_s in rows:
        p = sort_key((p_s,))
        x = 0.0 if p == float("inf") else 1.0 / p
        y = -float(e_s)
        if prev is not None and prev[2] == "4" and p >= 5.0:
            # the one genuine discontinuity sits at p = 5; the row at p = 5
            # itself supplies the lower endpoint when present
            xs.append(0.2)
            ys.append(prev[1])
            if x != 0.2:
                xs.append(0.2)
                ys.append(y)
        xs.append(x)
        ys.append(y)
        boundary.append((p_s, y))
        prev = (x, y, piece_s)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.fill_between(xs, 0.0, ys, color="#9ecae1", alpha=0.7, linewidth=0,
                    label="proven")
    ax.plot(xs, ys, color="#08519c", linewidth=1.4)
    cx = [CRITICAL_X_LO + i * (CRITICAL_X_HI - CRITICAL_X_LO) / 100.0
          for i in range(101)]
    cx[0], cx[-1] = CRITICAL_X_LO, CRITICAL_X_HI
    cy = [critical_curve_y(x) for x in cx]
    ax.plot(cx, cy, color="red", linewidth=1.4, label="critical curve")
    ax.set_xlim(0.0, 0.5)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("1/p")
    ax.set_ylabel("-log delta / log lambda")
    ax.legend(loc="upper left", frameon=False)
    fig.savefig(out / "region.png", dpi=150)

    _copy_layer(region_csv, out, "region_data.csv")
    with open(out / "region_boundary.csv", "w", newline="\n") as fh:
        fh.write("p,boundary_y\n")
        for p_s, y in boundary:
            fh.write(f"{p_s},{_g17(y)}\n")
    with open(out / "region_curve.csv", "w", newline="\n") as fh:
        fh.write("x,y\n")
        for x, y in zip(cx, cy):
            fh.write(f"{_g17(x)},{_g17(y)}\n")
    return fig


# --- cap census histograms --------------------------------------------------

def render_histograms(caps_csv, out_dir):
    """One figure per (lambda, delta) group, one panel per rank; bar heights
    are the census counts, untouched."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = read_rows(caps_csv, CAPS_HEADER)
    groups = {}
    for lam_s, delta_s, rank_s, s_s, count_s in rows:
        groups.setdefault((lam_s, delta_s), []).append(
            (int(rank_s), int(s_s), int(count_s)))

    figs = {}
    if not groups:
        # empty census: one empty-axes figure, no crash
        fig, ax = plt.subplots(figsize=(4.0, 3.0))
        ax.set_xlabel("log2 cap size")
        ax.set_ylabel("caps")
        fig.savefig(out / "caps_hist_0.png", dpi=150)
        figs[None] = fig
    for i, (key, entries) in enumerate(sorted(groups.items())):
        lam_s, delta_s = key
        ranks = sorted({r for r, _, _ in entries})
        fig, axes = plt.subplots(1, max(1, len(ranks)),
                                 figsize=(3.2 * max(1, len(ranks)), 3.0),
                                 squeeze=False)
        for ax, rank in zip(axes[0], ranks):
            data = [(s, c) for r, s, c in entries if r == rank]
            ax.bar([s for s, _ in data], [c for _, c in data],
                   width=0.8, color="#74c476")
            ax.set_title(f"rank {rank}")
            ax.set_xlabel("log2 cap size")
        axes[0][0].set_ylabel(f"caps  (lam={lam_s}, delta={delta_s})")
        fig.tight_layout()
        fig.savefig(out / f"caps_hist_{i}.png", dpi=150)
        figs[key] = fig
    _copy_layer(caps_csv, out, "caps_data.csv")
    return figs


# --- bound ratio curves -----------------------------------------------------

def _series_max_by_lambda(rows, val_idx, key_filter=None):
    """Per distinct lambda (ascending), the max of one column; rows whose
    value column is blank are skipped."""
    picked = {}
    for row in rows:
        if key_filter is not None and not key_filter(row):
            continue
        if row[val_idx] == "":
            continue
        lam = float(row[0])
        v = float(row[val_idx])
        if lam not in picked or v > picked[lam]:
            picked[lam] = v
    lams = sorted(picked)
    return lams, [picked[lam] for lam in lams]


def render_ratio_curves(ratios_csv, expsum_csv, out_dir):
    """Observed/bound ratio against lambda on log-log axes, one series per
    bound id (the max over the dyadic rows at each lambda)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    figs = {}

    if ratios_csv is not None:
        rows = read_rows(ratios_csv, RATIOS_HEADER)
        bound_ids = sorted({row[2] for row in rows})
        fig, ax = plt.subplots(figsize=(5.6, 4.0))
        for bid in bound_ids:
            lams, vals = _series_max_by_lambda(
                rows, 6, key_filter=lambda r, b=bid: r[2] == b)
            ax.plot(lams, vals, marker="o", label=bid)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("lambda")
        ax.set_ylabel("observed / bound")
        if bound_ids:
            ax.legend(fontsize=7, frameon=False)
        fig.savefig(out / "ratios.png", dpi=150)
        figs["ratios"] = fig
        _copy_layer(ratios_csv, out, "ratios_data.csv")

    if expsum_csv is not None:
        rows = read_rows(expsum_csv, EXPSUM_HEADER)
        fig, ax = plt.subplots(figsize=(5.6, 4.0))
        for label, col in (("trivial", 5), ("refined window", 6)):
            lams, vals = _series_max_by_lambda(rows, col)
            if lams:
                ax.plot(lams, vals, marker="o", label=label)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("lambda")
        ax.set_ylabel("|S| / bound")
        ax.legend(fontsize=7, frameon=False)
        fig.savefig(out / "expsum.png", dpi=150)
        figs["expsum"] = fig
        _copy_layer(expsum_csv, out, "expsum_data.csv")
    return figs


# --- entry point ------------------------------------------------------------

def main(argv=None):
    ap = argparse.ArgumentParser(
        description="render bundle CSVs to figures with data layers")
    ap.add_argument("--in", dest="src", required=True,
                    help="bundle directory (shellcap run output)")
    ap.add_argument("--out", dest="out", required=True,
                    help="figure directory")
    args = ap.parse_args(argv)
    src = Path(args.src)
    written = []
    try:
        region = src / "region.csv"
        if region.exists():
            render_region(region, args.out)
            written += ["region.png", "region_data.csv",
                        "region_boundary.csv", "region_curve.csv"]
        caps = src / "caps.csv"
        if caps.exists():
            figs = render_histograms(caps, args.out)
            written += [f"caps_hist_{i}.png" for i in range(max(1, len(figs)))]
            written += ["caps_data.csv"]
        ratios = src / "ratios.csv"
        expsum = src / "expsum.csv"
        figs = render_ratio_curves(ratios if ratios.exists() else None,
                                   expsum if expsum.exists() else None,
                                   args.out)
        for name in figs:
            written += [f"{name}.png", f"{name}_data.csv"]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        plt.close("all")
    if not written:
        print(f"error: no renderable CSVs in {src}", file=sys.stderr)
        return 2
    for name in written:
        print(str(Path(args.out) / name))
    return 0


if __name__ == "__main__":
    sys.exit(main())
