"""Visual sets of horoballs seen from an outside basepoint."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .analysis.quasigeodesic import _PrefixChecker
from .cusped import CuspedSpace
from .errors import BasepointInsideHoroball
from .graph import Graph, PathRecord, certify, set_diameter
from .groups import CosetId

_L, _A = 3, 0


@dataclass(frozen=True)
class VisualSet:
    basepoint: int
    horoball: CosetId
    members: frozenset[int]
    witnesses: dict[int, PathRecord]
    search_exhausted: bool
    budget: int
    ambient: Graph = field(repr=False, compare=False)


def _restricted_path(g: Graph, p: int, x: int, dx: np.ndarray) -> list[int] | None:
    # lex-first geodesic from p to x through vertices off the horoball
    if dx[p] < 0:
        return None
    path, cur = [p], p
    while cur != x:
        cur = next(w for w in g.neighbors(cur) if dx[w] == dx[cur] - 1)
        path.append(cur)
    return path


def witness_ok(g: Graph, path: PathRecord, horoball: frozenset[int]) -> bool:
    """Independent re-check: (3, 0) bounds and a single horoball vertex at the end."""
    hits = [v for v in path.vertices if v in horoball]
    return hits == [path.end] and certify(g, path.vertices, _L, _A).certified


def visual_set(cs: CuspedSpace, p: int, hb: CosetId, budget: int = 20_000) -> VisualSet:
    """Level-0 vertices of ``hb`` reachable from ``p`` by a certified (3, 0)-quasi-geodesic
    that meets the horoball only at its last vertex.

    Each coset vertex is first tried with the shortest path avoiding the
    horoball; a depth-first search with prefix certification, capped at
    ``budget`` node expansions, then looks for the rest.  The search order is
    fixed, so a larger budget only adds members.
    """
    g = cs.graph
    H = cs.horoballs[hb]
    if p in H:
        raise BasepointInsideHoroball(f"vertex {p} lies in the horoball of {hb}")
    targets = cs.cosets[hb]
    blocked = np.zeros(g.vertex_count, dtype=bool)
    blocked[list(H)] = True
    witnesses: dict[int, PathRecord] = {}
    dp = g.distances_from(p)
    # a prefix of length t at w can still end at x only if
    # t + d'(w, x) <= 3 d(p, x), with d' the metric off the horoball
    slack = np.full(g.vertex_count, -1, dtype=np.int64)
    for x in sorted(targets):
        dx = g.bfs(x, blocked=blocked)
        ok = dx >= 0
        slack[ok] = np.maximum(slack[ok], _L * int(dp[x]) - dx[ok])
        path = _restricted_path(g, p, x, dx)
        if path is not None:
            rec = certify(g, path, _L, _A)
            if rec.certified:
                witnesses[x] = rec

    # depth-first search off the horoball; a path stops when it enters it
    checker = _PrefixChecker(g, Fraction(_L), Fraction(_A))
    path = [p]
    stack = [iter(g.neighbors(p))]
    expansions = 0
    complete = True
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        inside = bool(blocked[nxt])
        if inside and nxt not in targets:
            continue
        if len(path) > slack[nxt]:
            continue
        if not checker.ok(path, nxt):
            continue
        expansions += 1
        if expansions > budget:
            complete = False
            break
        if inside:
            if nxt not in witnesses:
                witnesses[nxt] = PathRecord(tuple(path) + (nxt,), _L, _A, True)
            continue
        path.append(nxt)
        stack.append(iter(g.neighbors(nxt)))
    return VisualSet(p, hb, frozenset(witnesses), witnesses, complete, budget, g)


def visual_size(vs: VisualSet) -> int:
    """Ambient diameter of the members; 0 when there are fewer than two."""
    if len(vs.members) < 2:
        return 0
    return set_diameter(vs.ambient, vs.members)


@dataclass(frozen=True)
class VisualProfile:
    horoball: CosetId
    sizes: dict[int, int]
    sets: dict[int, VisualSet] = field(repr=False)

    @property
    def max_size(self) -> int:
        return max(self.sizes.values(), default=0)

    @property
    def spread(self) -> float | None:
        """``max / min`` over the nonzero sizes."""
        nz = [s for s in self.sizes.values() if s > 0]
        return max(nz) / min(nz) if nz else None


def visual_size_profile(
    cs: CuspedSpace, hb: CosetId, basepoints: Iterable[int], budget: int = 20_000
) -> VisualProfile:
    sets = {int(p): visual_set(cs, int(p), hb, budget) for p in basepoints}
    return VisualProfile(hb, {p: visual_size(v) for p, v in sets.items()}, sets)
