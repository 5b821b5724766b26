"""Unit-grid models of the ray-with-strips space Y and its cusped variant X^h.

Y is the ray ``{(x, 0, 0) : x >= 0}`` with a flat strip ``{2m} x [-m, m] x R``
attached at ``(2m, 0, 0)`` for ``m = 1 .. extent``.  Strips are cut at
``|t| <= height``.  X^h additionally wedges a plane ``E_m`` at the ray point
``(2m + 1, 0, 0)`` for ``m = 0 .. extent - 1`` and glues a depth-``D``
horoball over each plane grid.

Y points are tagged ``SpacePoint((x, s, t))`` (chart 0); plane points are
``SpacePoint((u, v), chart=m + 1)`` except the wedge point, which keeps its
ray tag.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, HoroballPoint, PathRecord, SpacePoint, Tag, certify, hausdorff_distance
from .horoball import base_distance_matrix, horoball_level_edges


@dataclass(frozen=True, eq=False)
class ExampleSpace:
    graph: Graph
    extent: int
    height: int
    grid_step: int = 1
    depth: int | None = None
    plane_radius: int | None = None
    planes: dict[int, frozenset[int]] = field(default_factory=dict)
    horoballs: dict[int, frozenset[int]] = field(default_factory=dict)

    @property
    def ray_length(self) -> int:
        return 2 * self.extent + 1

    def point(self, x: int, s: int = 0, t: int = 0) -> int:
        return self.graph.index_of(SpacePoint((x, s, t)))

    def plane_point(self, m: int, u: int, v: int) -> int:
        if (u, v) == (0, 0):
            return self.point(2 * m + 1)
        return self.graph.index_of(SpacePoint((u, v), chart=m + 1))


class _Builder:
    def __init__(self) -> None:
        self.tags: list[Tag] = []
        self.index: dict[Tag, int] = {}
        self.edges: list[tuple[int, int]] = []

    def add(self, tag: Tag) -> int:
        i = self.index.get(tag)
        if i is None:
            i = self.index[tag] = len(self.tags)
            self.tags.append(tag)
        return i

    def link(self, a: Tag, b: Tag) -> None:
        self.edges.append((self.index[a], self.index[b]))

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.tags), self.edges, self.tags)


def _build_y(b: _Builder, extent: int, height: int) -> None:
    ray = [SpacePoint((x, 0, 0)) for x in range(2 * extent + 2)]
    for t in ray:
        b.add(t)
    for p, q in zip(ray, ray[1:]):
        b.link(p, q)
    for m in range(1, extent + 1):
        x = 2 * m
        pts = [(s, t) for s in range(-m, m + 1) for t in range(-height, height + 1)]
        for s, t in pts:
            b.add(SpacePoint((x, s, t)))
        for s, t in pts:
            if s < m:
                b.link(SpacePoint((x, s, t)), SpacePoint((x, s + 1, t)))
            if t < height:
                b.link(SpacePoint((x, s, t)), SpacePoint((x, s, t + 1)))


def build_example_Y(extent: int, height: int | None = None) -> ExampleSpace:
    if extent < 1:
        raise ValueError("extent must be at least 1")
    height = extent if height is None else height
    b = _Builder()
    _build_y(b, extent, height)
    return ExampleSpace(b.graph(), extent, height)


def build_example_Xh(
    extent: int, D: int, plane_radius: int | None = None, height: int | None = None
) -> ExampleSpace:
    """Y with ``extent`` wedged planes, each carrying a depth-``D`` horoball.

    ``D = 0`` gives the space X without horoballs.  Planes are cut to
    ``[-plane_radius, plane_radius]^2`` (default ``extent``).
    """
    if extent < 1:
        raise ValueError("extent must be at least 1")
    if D < 0:
        raise ValueError("depth must be non-negative")
    height = extent if height is None else height
    P = extent if plane_radius is None else plane_radius
    b = _Builder()
    _build_y(b, extent, height)
    planes: dict[int, frozenset[int]] = {}
    horoballs: dict[int, frozenset[int]] = {}
    for m in range(extent):
        wedge = SpacePoint((2 * m + 1, 0, 0))

        def tag(u: int, v: int, m=m, wedge=wedge) -> Tag:
            return wedge if (u, v) == (0, 0) else SpacePoint((u, v), chart=m + 1)

        coords = [(u, v) for u in range(-P, P + 1) for v in range(-P, P + 1)]
        base_tags = [tag(u, v) for u, v in coords]
        base_ids = [b.add(t) for t in base_tags]
        local = {c: i for i, c in enumerate(coords)}
        base_edges = []
        for (u, v), i in local.items():
            for q in ((u + 1, v), (u, v + 1)):
                j = local.get(q)
                if j is not None:
                    base_edges.append((i, j))
                    b.edges.append((base_ids[i], base_ids[j]))
        planes[m] = frozenset(base_ids)
        if D:
            base = Graph.from_edges(len(coords), base_edges, base_tags)
            level_ids = [base_ids]
            for k in range(1, D + 1):
                level_ids.append([b.add(HoroballPoint((m,), t, k)) for t in base_tags])
            b.edges.extend(horoball_level_edges(base_distance_matrix(base), D, level_ids))
            horoballs[m] = frozenset(i for ids in level_ids for i in ids)
    return ExampleSpace(b.graph(), extent, height, 1, D, P, planes, horoballs)


# ---------------------------------------------------------------------------
# Distinguished paths
# ---------------------------------------------------------------------------


def alpha_ray(space: ExampleSpace) -> PathRecord:
    """The ray ``alpha(t) = (t, 0, 0)`` up to the end of the grid."""
    return certify(space.graph, [space.point(x) for x in range(space.ray_length + 1)], 1, 0)


def beta_ray(space: ExampleSpace, n: int, sign: int, height: int | None = None) -> PathRecord:
    """``beta_n^-`` (``sign=-1``) or ``beta_n^+``: along alpha to ``2n``, then down/up the strip."""
    if not 1 <= n <= space.extent:
        raise ValueError(f"no strip with parameter {n}")
    h = space.height if height is None else height
    sgn = 1 if sign > 0 else -1
    vs = [space.point(x) for x in range(2 * n + 1)]
    vs += [space.point(2 * n, 0, sgn * t) for t in range(1, h + 1)]
    return certify(space.graph, vs, 1, 0)


def strip_bigon(space: ExampleSpace, n: int, height: int | None = None) -> tuple[PathRecord, PathRecord]:
    """Two geodesics across the strip at ``x = 2n`` between opposite corners.

    Both join ``(2n, -n, -h)`` to ``(2n, n, h)``: one crosses the strip
    first and then climbs, the other climbs first.  They span the region of
    the strip swept by ``beta_n^-`` and ``beta_n^+``.
    """
    h = space.height if height is None else height
    x = 2 * n
    across = [(s, -h) for s in range(-n, n + 1)] + [(n, t) for t in range(-h + 1, h + 1)]
    climb = [(-n, t) for t in range(-h, h + 1)] + [(s, h) for s in range(-n + 1, n + 1)]
    g = space.graph
    p = certify(g, [space.point(x, s, t) for s, t in across], 1, 0)
    q = certify(g, [space.point(x, s, t) for s, t in climb], 1, 0)
    return p, q


def bigon_fatness(g: Graph, p: PathRecord, q: PathRecord) -> int:
    """Hausdorff distance between the vertex sets of two paths."""
    return hausdorff_distance(g, p.vertices, q.vertices)
