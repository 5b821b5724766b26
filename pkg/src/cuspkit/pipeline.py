"""Build, analyze and summarize: the computations behind the command line."""
from __future__ import annotations

import time
from dataclasses import replace
from typing import Any, Callable

import numpy as np

from .analysis import (
    estimate_contraction,
    estimate_delta,
    fellow_traveling_membership,
    git_check,
    kappa,
    morse_gauge,
    sublinearity_report,
)
from .config import ExperimentConfig
from .cusped import CuspedSpace, build_cusped_space
from .errors import CuspkitError, GraphFormatError, NotSublinearWithinRange
from .graph import Graph, certify, lex_geodesic, tag_level
from .groups import CosetId, SubgroupSpec, make_group
from .visual import visual_size_profile

ANALYSES = ("delta", "contraction", "morse", "visual-size", "fellow-travel", "git")


class UnknownAnalysis(CuspkitError, ValueError):
    pass


def build_space(cfg: ExperimentConfig) -> CuspedSpace:
    m = make_group(cfg.family, cfg.rank)
    return build_cusped_space(m, SubgroupSpec.from_names(m, cfg.subgroup), cfg.R, cfg.D)


def _ranges(ids) -> list[list[int]]:
    out: list[list[int]] = []
    for v in sorted(ids):
        if out and out[-1][1] == v:
            out[-1][1] = v + 1
        else:
            out.append([v, v + 1])
    return out


def manifest(cs: CuspedSpace, cfg: ExperimentConfig) -> dict[str, Any]:
    m = cs.model
    identity = cs.vertex("e")
    return {
        "config": cfg.echo(),
        "vertices": cs.graph.vertex_count,
        "edges": cs.graph.edge_count,
        "cayley_vertices": cs.cayley_size,
        "horoball_vertices": cs.horoball_vertex_count(),
        "cosets": [
            {
                "representative": m.format(cid.representative),
                "level0": _ranges(cs.cosets[cid]),
                "vertices": _ranges(cs.horoballs[cid]),
                "split": cid in cs.split_cosets,
            }
            for cid in cs.cosets
        ],
        "basepoint": identity,
        "vertical_ray": list(cs.vertical_ray(identity).path.vertices),
    }


# ---------------------------------------------------------------------------
# Analysis
# ---------------------------------------------------------------------------


class _Context:
    """Lazily computed inputs shared by several analyses."""

    def __init__(self, g: Graph, man: dict | None, cfg: ExperimentConfig):
        self.g, self.man, self.cfg = g, man, cfg
        self._contraction = None

    def target(self) -> list[int]:
        if self.man and len(self.man.get("vertical_ray", [])) > 1:
            return list(self.man["vertical_ray"])
        # no stored ray: the lex-first geodesic from vertex 0 to the farthest vertex
        d = self.g.distances_from(0)
        far = int(np.argmax(d))
        return list(lex_geodesic(self.g, 0, far).vertices)

    def r_max(self) -> int:
        if self.cfg.r_max:
            return self.cfg.r_max
        dz = self.g.bfs(self.target())
        return max(1, int(dz.max()))

    def contraction(self):
        if self._contraction is None:
            self._contraction = estimate_contraction(
                self.g, self.target(), self.r_max(), self.cfg.budget, self.cfg.seed
            )
        return self._contraction

    def corner_pool(self) -> list[int]:
        return [v for v, t in enumerate(self.g.tags) if tag_level(t) == 0]


def _delta(ctx: _Context) -> dict:
    cfg = ctx.cfg
    est = estimate_delta(ctx.g, ctx.corner_pool(), cfg.triangles, cfg.policy, cfg.seed, cfg.cap, cfg.workers)
    return est.as_dict()


def _contraction(ctx: _Context) -> dict:
    e = ctx.contraction()
    window = ctx.cfg.window or max(1, e.r_max // 4)
    out = {"target": ctx.target(), "estimate": e.as_dict(), "window": window}
    if e.r_max >= 2 * window:
        out["verdict"] = sublinearity_report(e, window).as_dict()
    else:
        out["verdict"] = None
    return out


def _morse(ctx: _Context) -> dict:
    grid = [(1, 0), (2, 0), (3, 0)]
    est = morse_gauge(ctx.g, ctx.target(), grid, budget=ctx.cfg.qg_budget, seed=ctx.cfg.seed, max_pairs=16)
    return est.as_dict()


def _git(ctx: _Context) -> dict:
    return git_check(ctx.g, ctx.target(), ctx.contraction(), ctx.cfg.triangles, ctx.cfg.seed).as_dict()


def _fellow(ctx: _Context) -> dict:
    alpha_vs = ctx.target()
    alpha = certify(ctx.g, alpha_vs, 1, 0)
    o = alpha.start
    rho = ctx.contraction()
    try:
        k = kappa(rho, 1, 0)
    except NotSublinearWithinRange as exc:
        return {"alpha": alpha_vs, "kappa": None, "reason": str(exc), "betas": []}
    do = ctx.g.distances_from(o)
    reach = int(do[list(alpha_vs)].max())
    rng = np.random.default_rng([ctx.cfg.seed, 0xF7])
    pool = np.flatnonzero(do > 0)
    picks = sorted(set(rng.choice(pool, size=min(8, pool.size), replace=False).tolist())) if pool.size else []
    rows = []
    for w in picks:
        beta = lex_geodesic(ctx.g, o, int(w))
        last = 0
        for r in range(1, reach + 1):
            if not fellow_traveling_membership(ctx.g, beta, alpha, r, rho, o):
                break
            last = r
        rows.append({"endpoint": int(w), "length": beta.length, "max_radius": last})
    return {"alpha": alpha_vs, "kappa": str(k), "betas": rows}


def _visual(ctx: _Context) -> dict:
    if not ctx.man:
        raise GraphFormatError("visual-size needs the build manifest")
    cs = build_space(ctx.cfg)
    if cs.graph != ctx.g:
        raise GraphFormatError("graph file does not match its manifest")
    hb = CosetId(cs.model.identity)
    level0 = sorted(cs.cosets[hb])
    dh = cs.graph.bfs(level0)
    base = []
    for k in range(1, ctx.cfg.basepoints + 1):
        cands = [v for v in sorted(cs.cayley_part) if dh[v] == k and v not in cs.horoballs[hb]]
        if cands:
            base.append(cands[0])
    prof = visual_size_profile(cs, hb, base, ctx.cfg.visual_budget)
    g = cs.graph
    return {
        "horoball": cs.model.format(hb.representative),
        "budget": ctx.cfg.visual_budget,
        "basepoints": [
            {
                "vertex": p,
                "distance": int(dh[p]),
                "size": prof.sizes[p],
                "members": [cs.model.format(g.tag(v).form) for v in sorted(vs.members)],
                "exhausted": vs.search_exhausted,
            }
            for p, vs in prof.sets.items()
        ],
        "max_size": prof.max_size,
        "spread": prof.spread,
    }


def _space_keys(man: dict) -> dict:
    c = man["config"]
    return {"family": c["family"], "rank": c["rank"], "subgroup": tuple(c["subgroup"]), "R": c["R"], "D": c["D"]}


RUNNERS: dict[str, Callable[[_Context], dict]] = {
    "delta": _delta,
    "contraction": _contraction,
    "morse": _morse,
    "visual-size": _visual,
    "fellow-travel": _fellow,
    "git": _git,
}


def analyze(g: Graph, man: dict | None, cfg: ExperimentConfig, analyses) -> tuple[dict, dict]:
    """Run the named analyses; returns ``(report, timings)``.

    The report depends only on the graph, manifest and configuration;
    wall-clock timings are returned separately so reports stay reproducible.
    """
    unknown = [a for a in analyses if a not in RUNNERS]
    if unknown:
        raise UnknownAnalysis(f"unknown analysis {unknown[0]!r}; choose from {', '.join(ANALYSES)}")
    if man:
        cfg = replace(cfg, **_space_keys(man))
    ctx = _Context(g, man, cfg)
    results, timings = {}, {}
    for name in analyses:
        t0 = time.perf_counter()
        results[name] = RUNNERS[name](ctx)
        timings[name] = round(time.perf_counter() - t0, 6)
    space = _space_keys(man) if man else None
    report = {
        "config": {**cfg.echo(), "analyses": list(analyses)},
        "space": space,
        "graph": {
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "level0_vertices": len(ctx.corner_pool()),
        },
        "results": results,
    }
    return report, timings
