"""Figure rendering over the scheduler's CSV output.

Reads the sweep and sigma-experiment CSV schemas written by the ``ccsched``
command line tool and draws static figures (PNG or SVG, Agg backend).  Every
plotted number comes straight from the CSV; nothing is recomputed here.
"""

import csv
import dataclasses

import matplotlib

matplotlib.use("Agg")
# SVG element ids derive from object addresses unless the salt is pinned;
# a fixed salt keeps reruns byte-identical.
matplotlib.rcParams["svg.hashsalt"] = "ccplots"

import matplotlib.pyplot as plt
from matplotlib.ticker import MaxNLocator

SWEEP_COLUMNS = ("eta_hat", "Q", "strategy", "beta", "K_M", "K_U",
                 "T_M", "T_U", "dof_num", "dof_den", "dof_decimal", "feasible")
SIGMA_COLUMNS = ("sigma_bin", "n_samples", "dof_m_decimal",
                 "unicast_baseline", "uniform_optimum")

FIGURE_KINDS = ("dof_vs_etahat", "dofm_vs_sigma")


class SchemaError(ValueError):
    """A CSV header does not match the schema the figure kind expects."""

    def __init__(self, kind, missing, unexpected):
        self.kind = kind
        self.missing = tuple(missing)
        self.unexpected = tuple(unexpected)
        parts = [f"{kind}: CSV header does not match the expected schema"]
        if self.missing:
            parts.append("missing columns: " + ", ".join(self.missing))
        if self.unexpected:
            parts.append("unexpected columns: " + ", ".join(self.unexpected))
        super().__init__("; ".join(parts))


@dataclasses.dataclass(frozen=True)
class FigureSpec:
    """One figure to draw: which kind, from which CSV, to which image file.

    Empty title/label strings fall back to per-kind defaults.
    """

    kind: str
    csv_path: str
    out_path: str
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""


@dataclasses.dataclass(frozen=True)
class RenderSummary:
    """What a render call actually drew, for callers that want to check."""

    kind: str
    out_path: str
    series: dict
    baselines: dict


def _read_rows(path, expected, kind):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(kind, expected, ())
        missing = [c for c in expected if c not in header]
        unexpected = [c for c in header if c not in expected]
        if missing or unexpected:
            raise SchemaError(kind, missing, unexpected)
        return list(reader)


def sweep_series(rows):
    """Group feasible sweep rows into one (eta_hat, dof) point list per Q.

    Infeasible rows carry empty result fields and are skipped.  Points are
    sorted by eta_hat so lines draw left to right regardless of row order.
    """
    series = {}
    for row in rows:
        if row["feasible"] != "true":
            continue
        q = int(row["Q"])
        series.setdefault(q, []).append(
            (int(row["eta_hat"]), float(row["dof_decimal"])))
    for points in series.values():
        points.sort()
    return series


def sigma_series(rows):
    """Extract (sigma_bin, mean dof) points and the two baseline levels.

    The scheduler repeats the baselines on every row; the first row is
    taken as authoritative.  Header-only input yields no baselines.
    """
    points = sorted((float(r["sigma_bin"]), float(r["dof_m_decimal"]))
                    for r in rows)
    baselines = {}
    if rows:
        baselines = {"unicast": float(rows[0]["unicast_baseline"]),
                     "uniform_optimum": float(rows[0]["uniform_optimum"])}
    return points, baselines


def _draw_sweep(ax, spec):
    rows = _read_rows(spec.csv_path, SWEEP_COLUMNS, spec.kind)
    series = sweep_series(rows)
    for q in sorted(series):
        xs = [x for x, _ in series[q]]
        ys = [y for _, y in series[q]]
        ax.plot(xs, ys, marker="o", label=f"Q = {q}")
    ax.set_xlabel(spec.xlabel or r"delivery parameter $\hat{\eta}$")
    ax.set_ylabel(spec.ylabel or "DoF")
    ax.set_title(spec.title or r"DoF against $\hat{\eta}$, one line per Q")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    if series:
        ax.legend()
    return RenderSummary(kind=spec.kind, out_path=spec.out_path,
                         series=series, baselines={})


def _draw_sigma(ax, spec):
    rows = _read_rows(spec.csv_path, SIGMA_COLUMNS, spec.kind)
    points, baselines = sigma_series(rows)
    if points:
        ax.plot([x for x, _ in points], [y for _, y in points],
                marker="o", color="tab:blue", label="mean best DoF per bin")
        ax.axhline(baselines["unicast"], color="tab:red", linestyle="--",
                   label="unicast baseline")
        ax.axhline(baselines["uniform_optimum"], color="tab:green",
                   linestyle=":", label="uniform-association optimum")
        ax.legend()
    ax.set_xlabel(spec.xlabel or r"association spread $\sigma$")
    ax.set_ylabel(spec.ylabel or "mean best DoF")
    ax.set_title(spec.title or "Best DoF against association spread")
    return RenderSummary(kind=spec.kind, out_path=spec.out_path,
                         series={"dof_m": points}, baselines=baselines)


def _save(fig, path):
    # The SVG writer stamps a creation date by default; drop it so reruns
    # of the same spec produce identical bytes.
    if path.lower().endswith(".svg"):
        fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path, dpi=150)


def render(spec):
    """Draw the figure described by ``spec`` and write it to ``spec.out_path``.

    Returns a RenderSummary holding exactly the values that were plotted.
    Raises SchemaError when the CSV header does not match the kind's schema
    and ValueError for an unknown kind or unparsable cell values.
    """
    if spec.kind not in FIGURE_KINDS:
        raise ValueError(f"unknown figure kind: {spec.kind!r}")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        if spec.kind == "dof_vs_etahat":
            summary = _draw_sweep(ax, spec)
        else:
            summary = _draw_sigma(ax, spec)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        _save(fig, spec.out_path)
    finally:
        plt.close(fig)
    return summary
