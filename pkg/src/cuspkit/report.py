"""Plots and summary tables over analysis reports."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import GraphFormatError  # noqa: E402

SUMMARY_FIELDS = [
    "kind", "report", "family", "R", "D", "seed", "delta", "triangles",
    "rho_r_max", "verdict", "visual_max", "compared_to", "ratio",
]

plt.rcParams["svg.hashsalt"] = "cuspkit"
plt.rcParams["svg.fonttype"] = "none"


class ReportParseError(GraphFormatError):
    pass


def load_report(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ReportParseError(f"{path}: {exc}") from None
    if not isinstance(data, dict) or "results" not in data or "config" not in data:
        raise ReportParseError(f"{path}: not an analysis report")
    return data


def _label(name: str, rep: dict) -> str:
    c = rep["config"]
    return f"{name} ({c.get('family')}, R={c.get('R')}, D={c.get('D')})"


def _save(fig, path: Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_rho(reports: dict[str, dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, rep in reports.items():
        block = rep["results"].get("contraction")
        if not block:
            continue
        table = block["estimate"]["table"]
        rs = sorted(int(r) for r in table)
        ax.plot(rs, [table[str(r)] for r in rs], marker="o", label=_label(name, rep))
    ax.set_xlabel("r")
    ax.set_ylabel("rho-hat(r)")
    ax.set_title("empirical contraction")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=7)
    _save(fig, path)


def _delta_points(reports: dict[str, dict]) -> list[tuple[int, int, str]]:
    pts = []
    for name, rep in reports.items():
        block = rep["results"].get("delta")
        if block:
            pts.append((int(rep["config"].get("R", 0)), int(block["delta"]), name))
    return sorted(pts)


def plot_delta(reports: dict[str, dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    pts = _delta_points(reports)
    if pts:
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="s")
    ax.set_xlabel("ball radius R")
    ax.set_ylabel("delta")
    ax.set_title("barycentre delta vs scale")
    _save(fig, path)


def plot_visual(reports: dict[str, dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, rep in reports.items():
        block = rep["results"].get("visual-size")
        if not block:
            continue
        rows = block["basepoints"]
        ax.plot([r["distance"] for r in rows], [r["size"] for r in rows], marker="^", label=_label(name, rep))
    ax.set_xlabel("basepoint distance to horoball")
    ax.set_ylabel("visual size")
    ax.set_title("visual size profile")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=7)
    _save(fig, path)


def summary_rows(reports: dict[str, dict]) -> list[dict]:
    rows = []
    for name, rep in reports.items():
        c, res = rep["config"], rep["results"]
        con = res.get("contraction")
        vis = res.get("visual-size")
        delta = res.get("delta")
        verdict = con.get("verdict") if con else None
        rows.append({
            "kind": "report",
            "report": name,
            "family": c.get("family"),
            "R": c.get("R"),
            "D": c.get("D"),
            "seed": c.get("seed"),
            "delta": delta["delta"] if delta else "",
            "triangles": delta["triangles_tested"] if delta else "",
            "rho_r_max": con["estimate"]["table"][str(con["estimate"]["r_max"])] if con else "",
            "verdict": verdict["verdict"] if verdict else "",
            "visual_max": vis["max_size"] if vis else "",
            "compared_to": "",
            "ratio": "",
        })
    pts = _delta_points(reports)
    for (r0, d0, n0), (r1, d1, n1) in zip(pts, pts[1:]):
        rows.append({
            "kind": "trend",
            "report": n1,
            "R": r1,
            "delta": d1,
            "compared_to": n0,
            "ratio": "inf" if d0 == 0 and d1 > 0 else f"{(d1 / d0) if d0 else 1.0:.6g}",
        })
    return rows


def write_summary(rows: list[dict], path: Path) -> None:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row.get(k, "") for k in SUMMARY_FIELDS})
    path.write_text(buf.getvalue())


def render(paths: list[str | Path], out_dir: str | Path) -> list[Path]:
    """Write ``rho.svg``, ``delta.svg``, ``visual.svg`` and ``summary.csv``."""
    if not paths:
        raise ValueError("no reports given")
    reports = {}
    for p in paths:
        name = Path(p).stem
        while name in reports:
            name += "_"
        reports[name] = load_report(p)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = [out / "rho.svg", out / "delta.svg", out / "visual.svg", out / "summary.csv"]
    plot_rho(reports, files[0])
    plot_delta(reports, files[1])
    plot_visual(reports, files[2])
    write_summary(summary_rows(reports), files[3])
    return files
