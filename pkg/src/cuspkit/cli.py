"""Command line: ``cuspkit build | analyze | report``.

Exit codes: 0 success, 2 usage or configuration error, 3 bad data or
failed construction, 4 unknown analysis.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .config import ExperimentConfig, load_config
from .errors import ConfigError, CuspkitError
from .graph import read_graph, write_graph
from .pipeline import ANALYSES, UnknownAnalysis, analyze, build_space, manifest
from .report import render

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ANALYSIS = 0, 2, 3, 4

_FLAG_KEYS = [
    ("family", str), ("rank", int), ("subgroup", str), ("R", int), ("D", int), ("seed", int),
    ("triangles", int), ("policy", str), ("cap", int), ("budget", int), ("qg_budget", int),
    ("visual_budget", int), ("r_max", int), ("window", int), ("basepoints", int),
    ("workers", int), ("output_dir", str),
]


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value configuration file")
    for key, kind in _FLAG_KEYS:
        p.add_argument(f"--{key}", dest=key, type=kind, default=None)


def _config(args) -> ExperimentConfig:
    overrides = {key: getattr(args, key) for key, _ in _FLAG_KEYS}
    if getattr(args, "analyses", None):
        overrides["analyses"] = args.analyses
    return load_config(args.config, overrides)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_build(args) -> int:
    cfg = _config(args)
    try:
        cs = build_space(cfg)
    except (CuspkitError, ValueError) as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_DATA
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_graph(cs.graph, out / "graph.txt")
    (out / "manifest.json").write_text(_dump(manifest(cs, cfg)))
    print(f"wrote {out / 'graph.txt'} ({cs.graph.vertex_count} vertices) and manifest.json")
    return EXIT_OK


def cmd_analyze(args) -> int:
    names = [a.strip() for a in args.analyses.split(",") if a.strip()]
    unknown = [a for a in names if a not in ANALYSES]
    if unknown or not names:
        print(f"error: unknown analysis {unknown[0] if unknown else ''!r}; choose from {', '.join(ANALYSES)}",
              file=sys.stderr)
        return EXIT_ANALYSIS
    cfg = _config(args)
    try:
        g = read_graph(args.graph)
        man_path = Path(args.manifest) if args.manifest else Path(args.graph).with_name("manifest.json")
        man = json.loads(man_path.read_text()) if man_path.exists() else None
    except (OSError, ValueError, CuspkitError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        report, timings = analyze(g, man, cfg, names)
    except UnknownAnalysis as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except (CuspkitError, ValueError, KeyError) as exc:
        print(f"error: analysis failed: {exc}", file=sys.stderr)
        return EXIT_DATA
    out = Path(args.out) if args.out else Path(cfg.output_dir) / "report.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(_dump(report))
    # timings vary run to run, so they live beside the report
    out.with_suffix(".timings.json").write_text(_dump(timings))
    print(f"wrote {out}")
    return EXIT_OK


def cmd_report(args) -> int:
    if not args.reports:
        print("error: no report files given", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load_config(args.config, {"output_dir": args.output_dir})
        files = render(args.reports, cfg.output_dir)
    except ConfigError:
        raise
    except (CuspkitError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    for f in files:
        print(f"wrote {f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cuspkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a cusped space and write graph.txt + manifest.json")
    _add_config_flags(b)
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="run analyses on a graph file")
    a.add_argument("graph")
    a.add_argument("--analyses", default="delta", help=f"comma list from {{{','.join(ANALYSES)}}}")
    a.add_argument("--manifest", help="build manifest (default: manifest.json next to the graph)")
    a.add_argument("--out", help="report path (default: OUTPUT_DIR/report.json)")
    _add_config_flags(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("report", help="render plots and a summary table from reports")
    r.add_argument("reports", nargs="*")
    r.add_argument("--config")
    r.add_argument("--output_dir", default=None)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
