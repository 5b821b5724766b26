"""Cusped spaces: a Cayley ball with a truncated horoball glued along every coset."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, GroupElement, HoroballPoint, Tag
from .groups import CosetId, GroupModel, SubgroupSpec, cayley_ball, coset_decompose
from .horoball import VerticalRay, base_distance_matrix, horoball_level_edges, vertical_ray


@dataclass(frozen=True)
class CuspedConfig:
    family: str
    rank: int
    subgroup: tuple[str, ...]
    R: int
    D: int

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "subgroup": list(self.subgroup),
            "R": self.R,
            "D": self.D,
        }


@dataclass(frozen=True, eq=False)
class CuspedSpace:
    """Cusped space truncated to a Cayley ball of radius ``R`` and depth ``D``.

    ``horoballs`` maps each coset to every vertex of its horoball, level 0
    included; ``cosets`` keeps just the level-0 members.  Cosets whose trace
    on the ball is disconnected get one horoball per component and are
    listed in ``split_cosets``.
    """

    graph: Graph
    model: GroupModel
    subgroup: SubgroupSpec
    config: CuspedConfig
    cayley_part: frozenset[int]
    cosets: dict[CosetId, frozenset[int]]
    horoballs: dict[CosetId, frozenset[int]]
    split_cosets: tuple[CosetId, ...]
    vertex_coset: dict[int, CosetId]

    @property
    def cayley_size(self) -> int:
        return len(self.cayley_part)

    def vertex(self, word: str) -> int:
        """Cayley vertex of the element spelled by ``word`` (e.g. ``"abA"``)."""
        return self.graph.index_of(GroupElement(self.model.parse(word)))

    def coset_of(self, v: int) -> CosetId:
        tag = self.graph.tag(v)
        if isinstance(tag, HoroballPoint):
            return CosetId(tag.coset)
        return self.vertex_coset[v]

    def level_vertex(self, v: int, level: int) -> int:
        """The vertex ``(v, level)`` above the Cayley vertex ``v``."""
        if level == 0:
            return v
        cid = self.coset_of(v)
        return self.graph.index_of(HoroballPoint(cid.representative, self.graph.tag(v), level))

    def vertical_ray(self, v: int) -> VerticalRay:
        return vertical_ray(self.graph, v, self.coset_of(v).representative)

    def horoball_subgraph(self, cid: CosetId) -> tuple[Graph, list[int]]:
        """Horoball of ``cid`` with its intrinsic metric (induced subgraph)."""
        return self.graph.subgraph(self.horoballs[cid])

    def horoball_vertex_count(self) -> int:
        return self.graph.vertex_count - self.cayley_size


def build_cusped_space(m: GroupModel, s: SubgroupSpec, R: int, D: int) -> CuspedSpace:
    """Glue a depth-``D`` horoball to every coset of ``s`` met by the radius-``R`` ball.

    Vertex numbering: the Cayley ball first (BFS order), then for each coset
    in representative order and each of its components, levels ``1..D`` in
    base order.  Level-0 horoball vertices are the coset vertices themselves.
    """
    if R < 1:
        raise ValueError("ball radius must be at least 1")
    if D < 0:
        raise ValueError("depth must be non-negative")
    ball = cayley_ball(m, R)
    cosets = coset_decompose(m, s, ball)
    tags: list[Tag] = list(ball.tags)
    edges = list(ball.edges())
    horoballs: dict[CosetId, frozenset[int]] = {}
    split = []
    for cid, members in cosets.items():
        # inside a coset the induced edges are exactly the S_i-labelled ones
        base, ids = ball.subgraph(members)
        comps = base.components()
        if len(comps) > 1:
            split.append(cid)
        hb = set(members)
        for comp in comps:
            part, local = base.subgraph(comp)
            ambient = [ids[i] for i in local]
            level_ids = [ambient]
            for k in range(1, D + 1):
                start = len(tags)
                level_ids.append(list(range(start, start + len(ambient))))
                tags.extend(HoroballPoint(cid.representative, ball.tag(v), k) for v in ambient)
                hb.update(level_ids[-1])
            edges.extend(horoball_level_edges(base_distance_matrix(part), D, level_ids))
        horoballs[cid] = frozenset(hb)
    g = Graph.from_edges(len(tags), edges, tags)
    config = CuspedConfig(m.family, m.rank, tuple(s.names()), R, D)
    return CuspedSpace(
        graph=g,
        model=m,
        subgroup=s,
        config=config,
        cayley_part=frozenset(range(ball.vertex_count)),
        cosets=cosets,
        horoballs=horoballs,
        split_cosets=tuple(split),
        vertex_coset={v: cid for cid, members in cosets.items() for v in members},
    )


def cayley_graph_of(cs: CuspedSpace) -> Graph:
    """The Cayley ball underneath the cusped space (ids coincide)."""
    g, ids = cs.graph.subgraph(cs.cayley_part)
    assert ids == list(range(len(ids)))
    return g


# ---------------------------------------------------------------------------
# Embedding diagnostics for horoballs inside the cusped space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingFit:
    """Fitted constants for ``d <= d_h <= C d + C`` and the properness table.

    ``proper_table[M]`` is the largest intrinsic horoball distance seen among
    sampled pairs whose ambient distance is at most ``M``.
    """

    pairs: int
    C: Fraction
    lower_violations: int
    proper_table: dict[int, int]
    seed: int

    def as_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "C": str(self.C),
            "lower_violations": self.lower_violations,
            "proper_table": {str(k): v for k, v in self.proper_table.items()},
            "seed": self.seed,
        }


def embedding_fit(cs: CuspedSpace, n_pairs: int = 10_000, seed: int = 0) -> EmbeddingFit:
    """Sample intra-horoball pairs (with replacement) and fit the QI constant.

    A horoball is drawn with probability proportional to its number of
    vertex pairs, then a uniform pair inside it.  ``C`` is the least value
    ``>= 1`` making ``d_h <= C d + C`` hold on every sampled pair.
    """
    rng = np.random.default_rng([seed, 0x3E3])
    cids = [c for c in cs.horoballs if len(cs.horoballs[c]) > 1]
    if not cids:
        return EmbeddingFit(0, Fraction(1), 0, {}, seed)
    sizes = np.array([len(cs.horoballs[c]) for c in cids], dtype=float)
    weights = sizes * (sizes - 1)
    picks = rng.choice(len(cids), size=n_pairs, p=weights / weights.sum())
    by_hb: dict[int, list[tuple[int, int]]] = {}
    for h in picks.tolist():
        n = int(sizes[h])
        i, j = rng.choice(n, size=2, replace=False).tolist()
        by_hb.setdefault(h, []).append((i, j))
    C = Fraction(1)
    lower_bad = 0
    best_at: dict[int, int] = {}
    for h in sorted(by_hb):
        sub, ids = cs.horoball_subgraph(cids[h])
        by_anchor: dict[int, list[int]] = {}
        for i, j in by_hb[h]:
            by_anchor.setdefault(i, []).append(j)
        for i, partners in sorted(by_anchor.items()):
            dh_row = sub.distances_from(i)
            # pairs across components of a split coset have no intrinsic distance
            reach = [j for j in partners if dh_row[j] >= 0]
            if not reach:
                continue
            amb = cs.graph.bfs(ids[i], cutoff=int(max(dh_row[j] for j in reach)))
            for j in reach:
                dh, d = int(dh_row[j]), int(amb[ids[j]])
                if d < 0 or d > dh:
                    lower_bad += 1
                    continue
                C = max(C, Fraction(dh, d + 1))
                best_at[d] = max(best_at.get(d, 0), dh)
    table = {}
    running = 0
    for M in range(1, max(best_at, default=0) + 1):
        running = max(running, best_at.get(M, 0), best_at.get(0, 0))
        table[M] = running
    return EmbeddingFit(n_pairs, C, lower_bad, table, seed)
