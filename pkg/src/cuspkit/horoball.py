"""Combinatorial horoballs truncated at a finite depth, and their vertical rays."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptyBase, NotLevelZero
from .graph import Graph, HoroballPoint, PathRecord, Tag, certify, tag_level


@dataclass(frozen=True)
class HoroballSpec:
    base: Graph
    depth: int
    coset: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be non-negative")


@dataclass(frozen=True)
class VerticalRay:
    base_vertex: int
    path: PathRecord

    @property
    def depth(self) -> int:
        return self.path.length


def base_distance_matrix(base: Graph) -> np.ndarray:
    """All-pairs intrinsic distances of the base graph (-1 across components)."""
    return np.stack([base.bfs(v) for v in range(base.vertex_count)]) if base.vertex_count else np.zeros((0, 0), int)


def horoball_level_edges(
    base_dist: np.ndarray, depth: int, level_ids: Sequence[Sequence[int]]
) -> list[tuple[int, int]]:
    """Edges of rules 2 and 3 for a horoball whose vertex ``(i, k)`` is ``level_ids[k][i]``.

    Rule 1 (copies of base edges at level 0) is the caller's business, since
    in a cusped space the level-0 vertices are the coset's own vertices.
    """
    n = base_dist.shape[0]
    edges: list[tuple[int, int]] = []
    for k in range(depth):
        lo, hi = level_ids[k], level_ids[k + 1]
        edges.extend((lo[i], hi[i]) for i in range(n))
    iu, ju = np.triu_indices(n, k=1)
    dij = base_dist[iu, ju]
    for k in range(1, depth + 1):
        sel = (dij > 0) & (dij <= 2**k)
        ids = level_ids[k]
        edges.extend((ids[i], ids[j]) for i, j in zip(iu[sel].tolist(), ju[sel].tolist()))
    return edges


def build_horoball(spec: HoroballSpec) -> Graph:
    """Horoball over ``spec.base`` truncated at level ``spec.depth``.

    Vertex ``(v, k)`` gets id ``k * n + v``; level-0 vertices keep the base
    tags, higher levels are tagged ``HoroballPoint(coset, base_tag, k)``.
    """
    base, depth = spec.base, spec.depth
    n = base.vertex_count
    if n == 0:
        raise EmptyBase("cannot build a horoball over an empty graph")
    if not base.is_connected():
        raise ValueError("horoball base must be connected")
    level_ids = [list(range(k * n, (k + 1) * n)) for k in range(depth + 1)]
    edges = list(base.edges())
    edges.extend(horoball_level_edges(base_distance_matrix(base), depth, level_ids))
    tags: list[Tag] = list(base.tags)
    for k in range(1, depth + 1):
        tags.extend(HoroballPoint(spec.coset, t, k) for t in base.tags)
    return Graph.from_edges(n * (depth + 1), edges, tags)


def _lift(g: Graph, v: int, coset: tuple[int, ...] | None) -> int | None:
    """Vertex one level above ``v`` (optionally inside the horoball of ``coset``)."""
    tag = g.tag(v)
    level = tag_level(tag)
    base = tag.base if isinstance(tag, HoroballPoint) else tag
    for w in g.neighbors(v):
        t = g.tag(w)
        if (
            isinstance(t, HoroballPoint)
            and t.level == level + 1
            and t.base == base
            and (coset is None or t.coset == coset)
        ):
            return w
    return None


def vertical_ray(h: Graph, base_vertex: int, coset: tuple[int, ...] | None = None) -> VerticalRay:
    """The ray ``(v,0), (v,1), ..., (v,D)`` above a level-0 vertex.

    Works on a standalone horoball and on a cusped space alike; ``coset``
    picks the horoball when a vertex carries several.
    """
    if tag_level(h.tag(base_vertex)) != 0:
        raise NotLevelZero(f"vertex {base_vertex} is not at level 0")
    path = [base_vertex]
    nxt = _lift(h, base_vertex, coset)
    if nxt is not None and coset is None:
        coset = h.tag(nxt).coset
    while nxt is not None:
        path.append(nxt)
        nxt = _lift(h, nxt, coset)
    return VerticalRay(base_vertex, certify(h, path, 1, 0))
