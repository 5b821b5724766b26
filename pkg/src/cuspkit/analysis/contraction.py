"""Empirical contraction of a vertex set, Geodesic Image checks and fellow-travelling membership."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..errors import EmptyTarget, NotSublinearWithinRange, RadiusExceedsPath
from ..graph import Graph, PathRecord, lex_geodesic
from .rho import Rho, SublinearEstimate, kappa


class _Projector:
    """Closest-point projections onto ``Z`` for every vertex at once."""

    def __init__(self, g: Graph, Z: Iterable[int]):
        self.Z = np.array(sorted(set(int(z) for z in Z)), dtype=np.int64)
        if self.Z.size == 0:
            raise EmptyTarget("target set is empty")
        self.g = g
        self.dZ = g.bfs(self.Z)
        # rows indexed by Z, columns by vertex
        self.D = np.stack([g.distances_from(int(z)) for z in self.Z])
        self.Dzz = self.D[:, self.Z].astype(np.int64)
        reach = self.dZ >= 0
        self.P = (self.D == self.dZ[None, :]) & reach[None, :]
        self.diamP = np.zeros(g.vertex_count, dtype=np.int64)
        multi = np.flatnonzero(self.P.sum(axis=0) > 1)
        for x in multi.tolist():
            idx = np.flatnonzero(self.P[:, x])
            self.diamP[x] = self.Dzz[np.ix_(idx, idx)].max()

    def diameter(self, vertices: Iterable[int]) -> int:
        """``diam(union of pi_Z(v))`` over ``vertices``."""
        mask = self.P[:, list(vertices)].any(axis=1)
        idx = np.flatnonzero(mask)
        return int(self.Dzz[np.ix_(idx, idx)].max()) if idx.size else 0

    def ball_value(self, x: int) -> int:
        """Max of ``diam(pi(x) | pi(y))`` over ``d(x, y) <= d(x, Z)``."""
        s = int(self.dZ[x])
        B = np.flatnonzero(self.g.bfs(x, cutoff=s) >= 0)
        px = np.flatnonzero(self.P[:, x])
        union = np.flatnonzero(self.P[:, B].any(axis=1))
        cross = int(self.Dzz[np.ix_(px, union)].max())
        return max(int(self.diamP[x]), int(self.diamP[B].max()), cross)


def estimate_contraction(
    g: Graph, Z: Iterable[int], r_max: int, budget: int, seed: int = 0
) -> SublinearEstimate:
    """Lower bound for the contraction function of ``Z`` on ``1..r_max``.

    For each sampled centre ``x`` with ``d(x, Z) = s`` every ``y`` in the
    ball ``B(x, s)`` is examined, so the value of a centre is exact.
    ``budget`` caps the centres per stratum; the sample is a prefix of a
    seeded permutation, so raising the budget never lowers an entry.
    """
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    proj = _Projector(g, Z)
    rng = np.random.default_rng([seed, 0xC0])
    table: dict[int, int] = {}
    exhausted = True
    for s in range(1, r_max + 1):
        centres = np.flatnonzero(proj.dZ == s)
        order = centres[rng.permutation(centres.size)]
        if order.size > budget:
            exhausted = False
            order = order[:budget]
        best = 0
        for x in order.tolist():
            best = max(best, proj.ball_value(x))
        table[s] = best
    return SublinearEstimate(table, r_max, budget, exhausted)


# ---------------------------------------------------------------------------
# Geodesic Image check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GitReport:
    kappa: Fraction
    kappa_fallback: bool
    sampled: int
    tested: int
    vacuous: int
    violations: int
    worst_ratio: float
    worst: tuple[int, ...] | None
    slack: float

    def as_dict(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "kappa_fallback": self.kappa_fallback,
            "sampled": self.sampled,
            "tested": self.tested,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "worst_ratio": self.worst_ratio,
            "worst_geodesic": list(self.worst) if self.worst else None,
            "slack": self.slack,
        }


def git_check(
    g: Graph,
    Z: Iterable[int],
    rho: SublinearEstimate,
    samples: int,
    seed: int = 0,
    slack: float = 2.0,
) -> GitReport:
    """Projection diameters of geodesics staying ``kappa``-far from ``Z``.

    A sampled geodesic ``gamma`` from ``x`` to ``y`` with ``d(gamma, Z) >= kappa``
    violates when ``diam(pi_Z(gamma)) > slack * max(rho(m), 1)`` where
    ``m = max(d(x, Z), d(y, Z))``.  Geodesics closer to ``Z`` are counted as
    vacuous.  When ``rho`` never passes the kappa threshold the fallback
    ``kappa = 3`` is used and flagged.
    """
    proj = _Projector(g, Z)
    try:
        k = kappa(rho, 1, 0)
        fallback = False
    except NotSublinearWithinRange:
        k, fallback = Fraction(3), True
    pool = np.flatnonzero(proj.dZ >= k)
    rng = np.random.default_rng([seed, 0x617])
    tested = vacuous = bad = 0
    worst_ratio, worst = 0.0, None
    if pool.size:
        for _ in range(samples):
            x, y = (int(v) for v in rng.choice(pool, size=2))
            gamma = lex_geodesic(g, x, y).vertices
            if proj.dZ[list(gamma)].min() < k:
                vacuous += 1
                continue
            tested += 1
            m = max(int(proj.dZ[x]), int(proj.dZ[y]))
            bound = max(rho(m), 1)
            ratio = proj.diameter(gamma) / bound
            if ratio > slack:
                bad += 1
            if ratio > worst_ratio:
                worst_ratio, worst = ratio, gamma
    return GitReport(k, fallback, samples if pool.size else 0, tested, vacuous, bad,
                     worst_ratio, worst, slack)


# ---------------------------------------------------------------------------
# Fellow travelling
# ---------------------------------------------------------------------------


def fellow_traveling_membership(
    g: Graph, beta: PathRecord, alpha: PathRecord, r: int, rho: Rho, o: int | None = None
) -> bool:
    """Whether ``beta`` comes within ``kappa(rho, L, A)`` of ``alpha`` outside the ``r``-ball about ``o``."""
    o = alpha.start if o is None else o
    if alpha.start != o:
        raise ValueError("alpha must start at o")
    k = kappa(rho, beta.L, beta.A)
    do = g.distances_from(o)
    far = [v for v in alpha.vertices if do[v] >= r]
    if not far:
        raise RadiusExceedsPath(f"alpha stays inside the ball of radius {r}")
    d = g.bfs(far)[list(beta.vertices)]
    d = d[d >= 0]
    return bool(d.size) and int(d.min()) <= k
