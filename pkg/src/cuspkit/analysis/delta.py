"""Barycentre defects of geodesic triangles and seeded hyperbolicity estimates."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from ..errors import NotATriangle
from ..graph import Graph, PathRecord, all_geodesics, lex_geodesic

POLICIES = ("first", "all_up_to_cap")

CornerSampler = Union[Callable[[np.random.Generator], tuple[int, int, int]], Sequence[int]]


def _as_vertices(side) -> tuple[int, ...]:
    return tuple(side.vertices) if isinstance(side, PathRecord) else tuple(int(v) for v in side)


def triangle_corners(sides) -> tuple[int, int, int]:
    """Corners ``(x, y, z)`` such that the sides join ``x-y``, ``y-z`` and ``z-x`` in some order."""
    if len(sides) != 3:
        raise NotATriangle("a triangle has three sides")
    ends = [(s[0], s[-1]) for s in (_as_vertices(s) for s in sides)]
    for perm in itertools.permutations(range(3)):
        for flips in itertools.product((False, True), repeat=3):
            seg = [ends[i][::-1] if f else ends[i] for i, f in zip(perm, flips)]
            if seg[0][1] == seg[1][0] and seg[1][1] == seg[2][0] and seg[2][1] == seg[0][0]:
                return seg[0][0], seg[1][0], seg[2][0]
    raise NotATriangle(f"side endpoints {ends} do not close up")


def _side_distances(g: Graph, sides) -> list[np.ndarray]:
    return [g.bfs(list(_as_vertices(s))) for s in sides]


def _best(rows: Sequence[np.ndarray]) -> tuple[int, int]:
    stack = np.stack(rows)
    worst = stack.max(axis=0)
    worst[(stack < 0).any(axis=0)] = np.iinfo(np.int32).max
    q = int(np.argmin(worst))
    return int(worst[q]), q


def barycenter(g: Graph, sides) -> tuple[int, int]:
    """``(delta, q)`` with ``q`` the smallest vertex realising the minimum."""
    triangle_corners(sides)
    return _best(_side_distances(g, sides))


def delta_barycenter(g: Graph, sides) -> int:
    """Least ``delta`` such that some vertex lies within ``delta`` of all three sides.

    Exact over the component of the triangle: one multi-source BFS per side
    gives ``d(q, side)`` for every ``q`` simultaneously.
    """
    return barycenter(g, sides)[0]


# ---------------------------------------------------------------------------
# Seeded estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    corners: tuple[int, int, int]
    sides: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    defect: int

    def as_dict(self) -> dict:
        return {"corners": list(self.corners), "sides": [list(s) for s in self.sides], "defect": self.defect}


@dataclass(frozen=True)
class DeltaEstimate:
    delta: int
    witness: Triangle
    triangles_tested: int
    geodesic_policy: str
    seed: int
    cap: int

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "witness": self.witness.as_dict(),
            "triangles_tested": self.triangles_tested,
            "geodesic_policy": self.geodesic_policy,
            "seed": self.seed,
            "cap": self.cap,
        }


def _sample_corners(sampler: CornerSampler, rng: np.random.Generator) -> tuple[int, int, int]:
    if callable(sampler):
        x, y, z = sampler(rng)
        return int(x), int(y), int(z)
    pool = np.asarray(sampler)
    return tuple(int(v) for v in pool[rng.integers(pool.size, size=3)])


def _evaluate(g: Graph, corners: tuple[int, int, int], policy: str, cap: int) -> Triangle:
    x, y, z = corners
    legs = ((x, y), (y, z), (z, x))
    if policy == "first":
        sides = tuple(lex_geodesic(g, a, b).vertices for a, b in legs)
        return Triangle(corners, sides, _best(_side_distances(g, sides))[0])
    # the existential choice of geodesics: minimise over enumerated sides
    options = [[p.vertices for p in all_geodesics(g, a, b, cap)] for a, b in legs]
    rows = [[g.bfs(list(s)) for s in opts] for opts in options]
    best = None
    for i, j, k in itertools.product(*(range(len(o)) for o in options)):
        val = _best((rows[0][i], rows[1][j], rows[2][k]))[0]
        if best is None or val < best[0]:
            best = (val, (options[0][i], options[1][j], options[2][k]))
            if val == 0:
                break
    return Triangle(corners, best[1], best[0])


_WORKER_GRAPH: Graph | None = None


def _init_worker(g: Graph) -> None:
    global _WORKER_GRAPH
    _WORKER_GRAPH = g


def _evaluate_batch(args) -> list[Triangle]:
    batch, policy, cap = args
    return [_evaluate(_WORKER_GRAPH, c, policy, cap) for c in batch]


def estimate_delta(
    g: Graph,
    corner_sampler: CornerSampler,
    n_triangles: int,
    policy: str = "first",
    seed: int = 0,
    cap: int = 4,
    workers: int = 1,
) -> DeltaEstimate:
    """Maximum barycentre defect over ``n_triangles`` seeded triangles.

    Triangle ``i`` draws its corners from ``default_rng([seed, i])``, so
    the sample does not depend on ``workers``.  The witness is the first
    triangle attaining the maximum.
    """
    if n_triangles < 1:
        raise ValueError("need at least one triangle")
    if policy not in POLICIES:
        raise ValueError(f"unknown geodesic policy {policy!r}")
    corners = [_sample_corners(corner_sampler, np.random.default_rng([seed, i])) for i in range(n_triangles)]
    if workers <= 1:
        results = [_evaluate(g, c, policy, cap) for c in corners]
    else:
        size = max(1, -(-n_triangles // (4 * workers)))
        batches = [(corners[i:i + size], policy, cap) for i in range(0, n_triangles, size)]
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(g,)) as pool:
            results = [t for chunk in pool.map(_evaluate_batch, batches) for t in chunk]
    witness = max(results, key=lambda t: t.defect)  # first maximum wins
    return DeltaEstimate(witness.defect, witness, n_triangles, policy, seed, cap)
