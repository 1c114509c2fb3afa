"""Round-by-round reports: a delimited table with exact rationals plus
rendered figures.

``write_report`` drops three files into the output directory:

* ``rounds.csv``:   one row per round; supports and weight totals as
                    exact ``p/q`` strings.
* ``supports.png``: weighted support per candidate across rounds, with
                    the quota line when one applies.
* ``weights.png``:  total remaining voter weight across rounds.

Figures necessarily rasterize the rationals to floats; the CSV keeps the
exact values.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .ballots import format_fraction
from .quota import Quota


def _rows_from_trace(trace_dict: dict) -> tuple[list[str], list[dict]]:
    candidates: list[str] = sorted({
        c for r in trace_dict["rounds"] for c in r.get("supports", {})
    })
    rows = []
    for r in trace_dict["rounds"]:
        supports = r.get("supports", {})
        weights = r.get("weights_after")
        total = None
        if weights is not None:
            total = sum(Fraction(w) for w in weights)
        rows.append({
            "round": r["round"],
            "depth": r.get("depth", ""),
            "action": r["action"],
            "candidates": " ".join(r["candidates"]),
            "supports": supports,
            "total_weight_after": format_fraction(total) if total is not None else "",
        })
    return candidates, rows


def write_report(
    out_dir: str | Path,
    trace_dict: dict,
    quota: Quota | None = None,
) -> list[Path]:
    """Write the delimited round table and the figures; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    candidates, rows = _rows_from_trace(trace_dict)

    csv_path = out / "rounds.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "depth", "action", "candidates", "total_weight_after"]
                        + [f"support:{c}" for c in candidates])
        for row in rows:
            writer.writerow(
                [row["round"], row["depth"], row["action"], row["candidates"],
                 row["total_weight_after"]]
                + [row["supports"].get(c, "") for c in candidates]
            )

    xs = [row["round"] for row in rows]

    fig, ax = plt.subplots(figsize=(8, 4.5))
    for c in candidates:
        ys = [
            float(Fraction(row["supports"][c])) if c in row["supports"] else None
            for row in rows
        ]
        ax.plot(xs, ys, marker="o", label=c)
    if quota is not None:
        ax.axhline(float(quota.value), color="black", linestyle="--", linewidth=1,
                   label=f"quota {quota.value}")
    ax.set_xlabel("round")
    ax.set_ylabel("weighted support")
    ax.set_title(f"{trace_dict['rule']}: support by round")
    ax.legend(fontsize="small", ncols=2)
    supports_path = out / "supports.png"
    fig.tight_layout()
    fig.savefig(supports_path, dpi=150)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(8, 3.5))
    totals = [
        float(Fraction(row["total_weight_after"])) if row["total_weight_after"] else None
        for row in rows
    ]
    ax.plot(xs, totals, marker="s", color="tab:red")
    ax.set_xlabel("round")
    ax.set_ylabel("total weight after round")
    ax.set_title(f"{trace_dict['rule']}: remaining voter weight")
    weights_path = out / "weights.png"
    fig.tight_layout()
    fig.savefig(weights_path, dpi=150)
    plt.close(fig)

    return [csv_path, supports_path, weights_path]
