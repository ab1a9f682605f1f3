"""Report serialization: JSON, CSV, plain tables, and figure rendering.

Report-producing commands write the delimited outputs and, unless disabled,
a PNG figure next to them.  Everything is a pure function of its inputs:
no clocks, no randomness, pinned figure metadata, so repeated runs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

FIG_METADATA = {"Software": "towerkit"}


@dataclass
class RunConfig:
    bound: int = 1
    ex_depth: int = 0
    cap: int = 300_000
    fmt: str = "table"  # json | csv | table
    out: str | None = None
    figures: bool = True

    def __post_init__(self):
        if self.bound < 0 or self.ex_depth < 0 or self.cap <= 0:
            raise ValueError("limits must be positive")
        if self.fmt not in ("json", "csv", "table"):
            raise ValueError(f"unknown format {self.fmt!r}")

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "ex_depth": self.ex_depth,
            "cap": self.cap,
            "format": self.fmt,
            "seedless": True,
        }


def csv_bytes(rows: list[list]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue().encode()


def json_bytes(data) -> bytes:
    return (json.dumps(data, indent=2, sort_keys=True) + "\n").encode()


def homology_csv_rows(table: list[dict]) -> list[list]:
    rows = [["degree", "betti", "torsion"]]
    for r in table:
        rows.append([r["degree"], r["betti"], ";".join(str(t) for t in r["torsion"])])
    return rows


def tower_csv_rows(report_json: dict) -> list[list]:
    rows = [["stage", "degree", "betti", "torsion", "map_rank"]]
    ranks = {}
    for m in report_json["maps"]:
        for d, mat in m["matrices"].items():
            ranks[(m["from"], int(d))] = _matrix_rank(mat)
    for s in report_json["stages"]:
        for h in s["homology"]:
            rows.append([
                s["n"], h["degree"], h["betti"],
                ";".join(str(t) for t in h["torsion"]),
                ranks.get((s["n"], h["degree"]), ""),
            ])
    return rows


def _matrix_rank(m: list[list[int]]) -> int:
    from .homology import invariant_factors

    entries = {(i, j): v for i, row in enumerate(m) for j, v in enumerate(row) if v}
    return len(invariant_factors(entries, len(m), len(m[0]) if m else 0))


def render_table(rows: list[list]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


# -- figures -------------------------------------------------------------------


def _matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def homology_figure(table: list[dict], path: Path, title: str) -> None:
    plt = _matplotlib()
    degrees = [r["degree"] for r in table]
    betti = [r["betti"] for r in table]
    fig, ax = plt.subplots(figsize=(4.2, 2.8))
    ax.bar(degrees, betti, color="#46688c", width=0.6)
    for r in table:
        if r["torsion"]:
            ax.annotate("+torsion", (r["degree"], r["betti"]), ha="center",
                        va="bottom", fontsize=7)
    ax.set_xlabel("degree")
    ax.set_ylabel("betti")
    ax.set_xticks(degrees)
    ax.set_title(title, fontsize=9)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=FIG_METADATA)
    plt.close(fig)


def tower_figure(report_json: dict, path: Path) -> None:
    plt = _matplotlib()
    stages = [s for s in report_json["stages"] if not s["capped"]]
    fig, ax = plt.subplots(figsize=(4.2, 2.8))
    degrees = sorted({h["degree"] for s in stages for h in s["homology"]})
    for d in degrees:
        xs = [s["n"] for s in stages]
        ys = [next((h["betti"] for h in s["homology"] if h["degree"] == d), 0)
              for s in stages]
        ax.plot(xs, ys, marker="o", label=f"H_{d}")
    ax.set_xlabel("stage n")
    ax.set_ylabel("betti")
    ax.set_xticks([s["n"] for s in stages])
    ax.legend(fontsize=7)
    ax.set_title(f"tower row {report_json['row']}", fontsize=9)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=FIG_METADATA)
    plt.close(fig)


def suite_figure(suite_json: dict, path: Path) -> None:
    plt = _matplotlib()
    counts = {"pass": 0, "capped": 0, "fail": 0}
    for c in suite_json["cases"]:
        counts[c["verdict"]] = counts.get(c["verdict"], 0) + 1
    fig, ax = plt.subplots(figsize=(3.6, 2.4))
    names = ["pass", "capped", "fail"]
    ax.bar(names, [counts.get(n, 0) for n in names],
           color=["#3c8c50", "#c8a03c", "#b43c3c"])
    ax.set_ylabel("cases")
    ax.set_title(f"suite {suite_json['suite']}", fontsize=9)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=FIG_METADATA)
    plt.close(fig)


def cofinality_figure(report_json: dict, path: Path) -> None:
    plt = _matplotlib()
    counts: dict[str, int] = {}
    for v in report_json["per_alpha"]:
        counts[v["verdict"]] = counts.get(v["verdict"], 0) + 1
    fig, ax = plt.subplots(figsize=(4.0, 2.4))
    names = sorted(counts)
    ax.bar(names, [counts[n] for n in names], color="#46688c")
    ax.set_ylabel("objects")
    ax.set_title(f"cofinality: {report_json['functor']}", fontsize=9)
    ax.tick_params(axis="x", labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=FIG_METADATA)
    plt.close(fig)


def write_report(prefix: Path, data: dict, csv_rows: list[list] | None,
                 figure=None, config: RunConfig | None = None) -> list[Path]:
    """Write JSON (+CSV, +PNG) files sharing a stem; returns paths written."""
    prefix.parent.mkdir(parents=True, exist_ok=True)
    payload = dict(data)
    if config is not None:
        payload["config"] = config.to_json()
    written = []
    jp = prefix.with_suffix(".json")
    jp.write_bytes(json_bytes(payload))
    written.append(jp)
    if csv_rows is not None:
        cp = prefix.with_suffix(".csv")
        cp.write_bytes(csv_bytes(csv_rows))
        written.append(cp)
    if figure is not None and (config is None or config.figures):
        fp = prefix.with_suffix(".png")
        figure(fp)
        written.append(fp)
    return written
