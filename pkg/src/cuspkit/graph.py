"""Finite unweighted graphs with tagged vertices and BFS metric queries.

Every metric question in cuspkit is answered on a :class:`Graph`: an
immutable, undirected, simple graph whose vertices are the integers
``0 .. n-1``.  Each vertex carries a tag describing what it stands for
(a group element, a point of a combinatorial horoball, or a point of one
of the example spaces).  Distances are edge counts.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import DisconnectedPair, EmptyTarget, GraphFormatError

# ---------------------------------------------------------------------------
# Vertex tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """A group element given by its normal form (family specific int tuple)."""

    form: tuple[int, ...]


@dataclass(frozen=True)
class SpacePoint:
    """A lattice point of a hand-built space; ``chart`` separates glued pieces."""

    coords: tuple[int, ...]
    chart: int = 0


@dataclass(frozen=True)
class HoroballPoint:
    """Vertex ``(base, level)`` of the horoball attached along ``coset``."""

    coset: tuple[int, ...]
    base: "Tag"
    level: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError("horoball level must be non-negative")


Tag = Union[GroupElement, SpacePoint, HoroballPoint]


def _ints(values: Iterable[int]) -> str:
    return ",".join(str(int(v)) for v in values)


def _parse_ints(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(v) for v in text.split(","))


def encode_tag(tag: Tag) -> str:
    if isinstance(tag, GroupElement):
        return "g:" + _ints(tag.form)
    if isinstance(tag, SpacePoint):
        return f"p{tag.chart}:" + _ints(tag.coords)
    if isinstance(tag, HoroballPoint):
        return f"h:{_ints(tag.coset)};{tag.level};{encode_tag(tag.base)}"
    raise TypeError(f"not a vertex tag: {tag!r}")


def decode_tag(text: str) -> Tag:
    try:
        kind, _, body = text.partition(":")
        if kind == "g":
            return GroupElement(_parse_ints(body))
        if kind.startswith("p"):
            return SpacePoint(_parse_ints(body), int(kind[1:]))
        if kind == "h":
            coset, level, base = body.split(";", 2)
            return HoroballPoint(_parse_ints(coset), decode_tag(base), int(level))
    except (ValueError, TypeError) as exc:
        raise GraphFormatError(f"bad vertex tag {text!r}") from exc
    raise GraphFormatError(f"bad vertex tag {text!r}")


def tag_level(tag: Tag) -> int:
    return tag.level if isinstance(tag, HoroballPoint) else 0


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

_ROW_CACHE_SIZE = 1024


class Graph:
    """Immutable simple undirected graph on ``0 .. n-1`` with vertex tags.

    Neighbor lists are kept sorted so every traversal that breaks ties by
    smallest vertex id is reproducible.  Single-source distance rows are
    memoized (bounded LRU); they are returned read-only.
    """

    __slots__ = ("_adj", "_tags", "_csr", "_rows", "_index", "_m")

    def __init__(self, adjacency: Sequence[Iterable[int]], tags: Sequence[Tag]):
        adj = tuple(tuple(sorted(set(int(w) for w in nbrs))) for nbrs in adjacency)
        if len(tags) != len(adj):
            raise ValueError("one tag per vertex required")
        n = len(adj)
        m2 = 0
        for v, nbrs in enumerate(adj):
            for w in nbrs:
                if not 0 <= w < n:
                    raise ValueError(f"edge {v}-{w} leaves the vertex range")
                if w == v:
                    raise ValueError(f"self-loop at {v}")
            m2 += len(nbrs)
        for v, nbrs in enumerate(adj):
            for w in nbrs:
                row = adj[w]
                i = bisect_left(row, v)
                if i == len(row) or row[i] != v:
                    raise ValueError(f"asymmetric edge {v}->{w}")
        self._adj = adj
        self._tags = tuple(tags)
        self._m = m2 // 2
        self._csr = None
        self._rows: OrderedDict[int, np.ndarray] = OrderedDict()
        self._index = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], tags: Sequence[Tag]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, tags)

    # -- structure ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._adj)

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def tag(self, v: int) -> Tag:
        return self._tags[v]

    @property
    def tags(self) -> tuple[Tag, ...]:
        return self._tags

    def index_of(self, tag: Tag) -> int:
        """Vertex carrying ``tag``; raises KeyError when absent."""
        if self._index is None:
            self._index = {t: i for i, t in enumerate(self._tags)}
        return self._index[tag]

    def has_tag(self, tag: Tag) -> bool:
        try:
            self.index_of(tag)
        except KeyError:
            return False
        return True

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self._adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def is_adjacent(self, u: int, v: int) -> bool:
        row = self._adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph; returns it with the local-to-ambient id map."""
        keep = sorted(set(vertices))
        local = {v: i for i, v in enumerate(keep)}
        adj = [[local[w] for w in self._adj[v] if w in local] for v in keep]
        return Graph(adj, [self._tags[v] for v in keep]), keep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._tags == other._tags

    def __hash__(self) -> int:
        return hash((self._adj, self._tags))

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"

    def __getstate__(self):
        return (self._adj, self._tags, self._m)

    def __setstate__(self, state):
        self._adj, self._tags, self._m = state
        self._csr = None
        self._rows = OrderedDict()
        self._index = None

    # -- BFS ---------------------------------------------------------------

    def _csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            degrees = np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=len(self._adj))
            indptr = np.zeros(len(self._adj) + 1, dtype=np.int64)
            np.cumsum(degrees, out=indptr[1:])
            indices = np.fromiter(
                (w for a in self._adj for w in a), dtype=np.int64, count=int(indptr[-1])
            )
            self._csr = (indptr, indices)
        return self._csr

    def bfs(
        self,
        sources: Iterable[int] | int,
        cutoff: int | None = None,
        blocked: np.ndarray | None = None,
    ) -> np.ndarray:
        """Multi-source BFS distances (``-1`` where unreachable or beyond cutoff).

        ``blocked`` is a boolean mask of vertices that may not be entered;
        sources are always admitted.
        """
        n = len(self._adj)
        dist = np.full(n, -1, dtype=np.int32)
        frontier = np.unique(np.atleast_1d(np.asarray(sources, dtype=np.int64)))
        if frontier.size == 0:
            return dist
        dist[frontier] = 0
        indptr, indices = self._csr_arrays()
        level = 0
        while frontier.size and (cutoff is None or level < cutoff):
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            total = int(counts.sum())
            if total == 0:
                break
            shift = np.repeat(starts - (np.cumsum(counts) - counts), counts)
            nbrs = indices[shift + np.arange(total)]
            nbrs = nbrs[dist[nbrs] < 0]
            if blocked is not None:
                nbrs = nbrs[~blocked[nbrs]]
            if nbrs.size == 0:
                break
            frontier = np.unique(nbrs)
            level += 1
            dist[frontier] = level
        return dist

    def distances_from(self, v: int) -> np.ndarray:
        row = self._rows.get(v)
        if row is not None:
            self._rows.move_to_end(v)
            return row
        row = self.bfs(v)
        row.setflags(write=False)
        self._rows[v] = row
        if len(self._rows) > _ROW_CACHE_SIZE:
            self._rows.popitem(last=False)
        return row

    def is_connected(self) -> bool:
        return len(self._adj) == 0 or bool((self.distances_from(0) >= 0).all())

    def components(self) -> list[list[int]]:
        seen = np.zeros(len(self._adj), dtype=bool)
        comps = []
        for v in range(len(self._adj)):
            if not seen[v]:
                members = np.flatnonzero(self.bfs(v) >= 0)
                seen[members] = True
                comps.append(members.tolist())
        return comps


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathRecord:
    """An edge path with the quasi-geodesic constants it was certified for."""

    vertices: tuple[int, ...]
    L: Fraction = Fraction(1)
    A: Fraction = Fraction(0)
    certified: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "L", Fraction(self.L))
        object.__setattr__(self, "A", Fraction(self.A))
        if not self.vertices:
            raise ValueError("a path needs at least one vertex")
        if self.L < 1 or self.A < 0:
            raise ValueError("need L >= 1 and A >= 0")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "PathRecord":
        return PathRecord(self.vertices[::-1], self.L, self.A, self.certified)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


def _qg_violation(g: Graph, vertices: Sequence[int], L: Fraction, A: Fraction) -> bool:
    """True when some index pair breaks the (L, A) bounds (adjacency assumed)."""
    k = len(vertices)
    if k <= 1:
        return False
    idx = np.asarray(vertices, dtype=np.int64)
    dmat = np.stack([g.distances_from(int(v))[idx] for v in vertices]).astype(np.int64)
    if (dmat < 0).any():
        return True
    gap = np.abs(np.arange(k)[:, None] - np.arange(k)[None, :])
    p, q = L.numerator, L.denominator
    a, b = A.numerator, A.denominator
    # (j-i)/L - A <= d  <=>  (j-i)*q*b - a*p <= d*p*b
    lower_ok = gap * q * b - a * p <= dmat * p * b
    # d <= L(j-i) + A  <=>  d*q*b <= p*b*(j-i) + a*q
    upper_ok = dmat * q * b <= p * b * gap + a * q
    return not bool(lower_ok.all() and upper_ok.all())


def is_path(g: Graph, vertices: Sequence[int]) -> bool:
    return all(g.is_adjacent(u, v) for u, v in zip(vertices, vertices[1:]))


def is_quasi_geodesic(g: Graph, vertices: Sequence[int], L=1, A=0) -> bool:
    """Whether the edge path is an (L, A)-quasi-geodesic for the metric of ``g``."""
    L, A = Fraction(L), Fraction(A)
    return is_path(g, vertices) and not _qg_violation(g, vertices, L, A)


def certify(g: Graph, vertices: Sequence[int], L=1, A=0) -> PathRecord:
    """Check the (L, A) bounds on every index pair and record the outcome."""
    return PathRecord(tuple(vertices), L, A, is_quasi_geodesic(g, vertices, L, A))


# ---------------------------------------------------------------------------
# Metric operations
# ---------------------------------------------------------------------------


def shortest_distance(g: Graph, u: int, v: int) -> int:
    if u == v:
        return 0
    d = int(g.distances_from(u)[v])
    if d < 0:
        raise DisconnectedPair(f"no path between {u} and {v}")
    return d


def ball(g: Graph, center: int, r: int) -> frozenset[int]:
    if r < 0:
        raise ValueError("radius must be non-negative")
    return frozenset(np.flatnonzero(g.bfs(center, cutoff=r) >= 0).tolist())


def sphere(g: Graph, center: int, r: int) -> frozenset[int]:
    return frozenset(np.flatnonzero(g.bfs(center, cutoff=r) == r).tolist())


@dataclass(frozen=True)
class GeodesicSet:
    """Geodesics from ``u`` to ``v`` in lexicographic order, possibly capped."""

    paths: tuple[PathRecord, ...]
    total: int
    truncated: bool

    def __iter__(self):
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def _geodesic_dag(g: Graph, u: int, v: int) -> tuple[np.ndarray, int]:
    dv = g.distances_from(v)
    d = int(dv[u])
    if d < 0:
        raise DisconnectedPair(f"no path between {u} and {v}")
    return dv, d


def count_geodesics(g: Graph, u: int, v: int) -> int:
    dv, d = _geodesic_dag(g, u, v)
    du = g.distances_from(u)
    on = np.flatnonzero((du >= 0) & (du + dv == d))
    counts = {u: 1}
    for w in sorted(on.tolist(), key=lambda x: du[x]):
        if w == u:
            continue
        counts[w] = sum(counts.get(x, 0) for x in g.neighbors(w) if du[x] == du[w] - 1)
    return counts[v]


def lex_geodesic(g: Graph, u: int, v: int, last: bool = False) -> PathRecord:
    """The lexicographically first (or last) geodesic from ``u`` to ``v``."""
    dv, d = _geodesic_dag(g, u, v)
    path = [u]
    cur = u
    while cur != v:
        step = [w for w in g.neighbors(cur) if dv[w] == dv[cur] - 1]
        cur = step[-1] if last else step[0]
        path.append(cur)
    return PathRecord(tuple(path), 1, 0, True)


def all_geodesics(g: Graph, u: int, v: int, cap: int) -> GeodesicSet:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    dv, d = _geodesic_dag(g, u, v)
    found: list[PathRecord] = []
    stack = [(u, iter([w for w in g.neighbors(u) if dv[w] == dv[u] - 1]))]
    path = [u]
    if u == v:
        found.append(PathRecord((u,), 1, 0, True))
    while stack and len(found) < cap:
        cur, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        path.append(nxt)
        if nxt == v:
            found.append(PathRecord(tuple(path), 1, 0, True))
            path.pop()
            continue
        stack.append((nxt, iter([w for w in g.neighbors(nxt) if dv[w] == dv[nxt] - 1])))
    total = count_geodesics(g, u, v)
    return GeodesicSet(tuple(found), total, total > len(found))


def distance_to_set(g: Graph, Z: Iterable[int]) -> np.ndarray:
    zs = list(Z)
    if not zs:
        raise EmptyTarget("target set is empty")
    return g.bfs(zs)


def closest_point_projection(g: Graph, x: int, Z: Iterable[int]) -> frozenset[int]:
    zs = sorted(set(Z))
    if not zs:
        raise EmptyTarget("target set is empty")
    dx = g.distances_from(x)[zs]
    reach = dx >= 0
    if not reach.any():
        raise DisconnectedPair(f"vertex {x} cannot reach the target set")
    best = dx[reach].min()
    return frozenset(z for z, dz in zip(zs, dx.tolist()) if dz == best)


def set_diameter(g: Graph, S: Iterable[int]) -> int:
    members = sorted(set(S))
    if not members:
        raise EmptyTarget("cannot take the diameter of an empty set")
    idx = np.asarray(members)
    best = 0
    for v in members:
        row = g.distances_from(v)[idx]
        if (row < 0).any():
            raise DisconnectedPair("set spans several components")
        best = max(best, int(row.max()))
    return best


def hausdorff_distance(g: Graph, P: Iterable[int], Q: Iterable[int]) -> int:
    P, Q = list(P), list(Q)
    dq = g.bfs(Q)
    dp = g.bfs(P)
    a, b = dq[P], dp[Q]
    if (a < 0).any() or (b < 0).any():
        raise DisconnectedPair("sets lie in different components")
    return int(max(a.max(), b.max()))


# ---------------------------------------------------------------------------
# Plain-text serialization
# ---------------------------------------------------------------------------


def dumps_graph(g: Graph) -> str:
    lines = [f"vertices {g.vertex_count} edges {g.edge_count}"]
    lines.extend(f"{v} {encode_tag(t)}" for v, t in enumerate(g.tags))
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    lines = text.splitlines()
    try:
        head = lines[0].split()
        if len(head) != 4 or head[0] != "vertices" or head[2] != "edges":
            raise GraphFormatError(f"bad header {lines[0]!r}")
        n, m = int(head[1]), int(head[3])
        if len(lines) != 1 + n + m:
            raise GraphFormatError(f"expected {1 + n + m} lines, found {len(lines)}")
        tags = []
        for i, line in enumerate(lines[1 : 1 + n]):
            vid, tag = line.split(" ", 1)
            if int(vid) != i:
                raise GraphFormatError(f"vertex line {i} carries id {vid}")
            tags.append(decode_tag(tag))
        edges = []
        for line in lines[1 + n :]:
            a, b = line.split()
            u, v = int(a), int(b)
            if not u < v < n:
                raise GraphFormatError(f"bad edge line {line!r}")
            edges.append((u, v))
        g = Graph.from_edges(n, edges, tags)
    except GraphFormatError:
        raise
    except (ValueError, IndexError) as exc:
        raise GraphFormatError(str(exc)) from exc
    if g.edge_count != m:
        raise GraphFormatError("duplicate edges in edge list")
    return g


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps_graph(g))


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return loads_graph(fh.read())


# ---------------------------------------------------------------------------
# Small constructors used by tests and examples
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], [SpacePoint((i,)) for i in range(n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], [SpacePoint((i,)) for i in range(n)])


def grid_graph(xs: range, ys: range) -> Graph:
    """Unit grid on ``xs x ys`` with l1 edges; vertex ids in row-major order."""
    pts = [(x, y) for x in xs for y in ys]
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for (x, y), i in index.items():
        for q in ((x + 1, y), (x, y + 1)):
            j = index.get(q)
            if j is not None:
                edges.append((i, j))
    return Graph.from_edges(len(pts), edges, [SpacePoint(p) for p in pts])
