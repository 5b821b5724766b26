"""Finite certified families of quasi-geodesics and Morse-gauge excursions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..errors import EmptyTarget, NoPathsGenerated
from ..graph import Graph, PathRecord, all_geodesics, certify, lex_geodesic


@dataclass(frozen=True)
class QuasiGeodesicFamily:
    paths: tuple[PathRecord, ...]
    geodesics: int
    detours: int
    enumerated: int
    exhaustive: bool

    def __iter__(self):
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


class _PrefixChecker:
    """Incremental (L, A) check of a growing path in exact integer arithmetic."""

    def __init__(self, g: Graph, L: Fraction, A: Fraction):
        self.g = g
        self.p, self.q = L.numerator, L.denominator
        self.a, self.b = A.numerator, A.denominator

    def ok(self, path: list[int], w: int) -> bool:
        k = len(path)
        d = self.g.distances_from(w)[path].astype(np.int64)
        gap = k - np.arange(k)
        p, q, a, b = self.p, self.q, self.a, self.b
        return bool(((gap * q * b - a * p <= d * p * b) & (d * q * b <= p * b * gap + a * q)).all())


def _random_geodesic(g: Graph, u: int, v: int, rng: np.random.Generator) -> list[int]:
    dv = g.distances_from(v)
    path, cur = [u], u
    while cur != v:
        step = [w for w in g.neighbors(cur) if dv[w] == dv[cur] - 1]
        cur = step[int(rng.integers(len(step)))]
        path.append(cur)
    return path


def quasi_geodesic_generator(
    g: Graph,
    u: int,
    v: int,
    L=1,
    A=0,
    budget: int = 32,
    seed: int = 0,
    cap: int = 16,
    exhaustive_limit: int = 20_000,
    max_paths: int = 5_000,
) -> QuasiGeodesicFamily:
    """Certified ``(L, A)``-quasi-geodesics from ``u`` to ``v``.

    Three sources, deduplicated in this order: up to ``cap`` geodesics;
    concatenations of geodesics through up to ``budget`` seeded detour
    points ``w`` with ``d(u,w) + d(w,v) <= L (d(u,v) + A)``; and a
    depth-first enumeration with prefix certification that stops after
    ``exhaustive_limit`` node expansions.  ``exhaustive`` is set only when
    that enumeration ran to completion and kept every path it found.
    Either ``(L, A) = (1, 0)`` or ``budget = 0`` returns geodesics only.
    """
    L, A = Fraction(L), Fraction(A)
    if L < 1 or A < 0:
        raise ValueError("need L >= 1 and A >= 0")
    du, dv = g.distances_from(u), g.distances_from(v)
    d = int(du[v])
    if d < 0:
        raise NoPathsGenerated(f"no path between {u} and {v}")
    seen: set[tuple[int, ...]] = set()
    out: list[PathRecord] = []

    def keep(vs) -> None:
        t = tuple(vs)
        if t not in seen and len(out) < max_paths:
            seen.add(t)
            out.append(PathRecord(t, L, A, True))

    for p in all_geodesics(g, u, v, cap):
        keep(p.vertices)
    n_geo = len(out)
    if (L == 1 and A == 0) or budget == 0:
        return QuasiGeodesicFamily(tuple(out), n_geo, 0, 0, False)

    rng = np.random.default_rng([seed, u, v])
    limit = L * (d + A)
    ws = np.flatnonzero((du >= 0) & (dv >= 0) & (du + dv <= limit) & (du + dv > d))
    ws = ws[rng.permutation(ws.size)][:budget]
    for w in ws.tolist():
        firsts = [lex_geodesic(g, u, w).vertices, lex_geodesic(g, u, w, last=True).vertices,
                  tuple(_random_geodesic(g, u, w, rng))]
        seconds = [lex_geodesic(g, w, v).vertices, lex_geodesic(g, w, v, last=True).vertices,
                   tuple(_random_geodesic(g, w, v, rng))]
        for a in firsts:
            for b in seconds:
                vs = a + b[1:]
                if certify(g, vs, L, A).certified:
                    keep(vs)
    n_detour = len(out) - n_geo

    # exhaustive enumeration; every prefix of a quasi-geodesic is one
    checker = _PrefixChecker(g, L, A)
    path = [u]
    stack = [iter(g.neighbors(u))]
    expansions = 0
    complete = True
    before = len(out)
    truncated = False
    if u == v:
        stack = []
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        if len(path) + int(dv[nxt]) > limit or dv[nxt] < 0:
            continue
        if not checker.ok(path, nxt):
            continue
        expansions += 1
        if expansions > exhaustive_limit:
            complete = False
            break
        if nxt == v:
            if len(out) >= max_paths:
                truncated = True
            keep(path + [nxt])
        path.append(nxt)
        stack.append(iter(g.neighbors(nxt)))
    n_enum = len(out) - before
    return QuasiGeodesicFamily(tuple(out), n_geo, n_detour, n_enum, complete and not truncated)


# ---------------------------------------------------------------------------
# Morse gauge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MorseExcursion:
    L: Fraction
    A: Fraction
    excursion: int
    pairs: int
    paths: int
    exhaustive: bool
    witness: tuple[int, ...] | None

    def as_dict(self) -> dict:
        return {
            "L": str(self.L),
            "A": str(self.A),
            "excursion": self.excursion,
            "pairs": self.pairs,
            "paths": self.paths,
            "exhaustive": self.exhaustive,
            "witness": list(self.witness) if self.witness else None,
        }


def morse_excursion(
    g: Graph,
    Z: Iterable[int],
    L=3,
    A=0,
    budget: int = 32,
    seed: int = 0,
    max_pairs: int | None = 64,
    cap: int = 16,
    exhaustive_limit: int = 20_000,
) -> MorseExcursion:
    """Largest distance to ``Z`` reached by a generated quasi-geodesic with endpoints on ``Z``.

    Endpoint pairs are visited in a seeded order, at most ``max_pairs`` of
    them (all when ``None``).  The value is a lower bound for ``N(L, A)``.
    """
    zs = sorted(set(int(z) for z in Z))
    if not zs:
        raise EmptyTarget("target set is empty")
    dZ = g.bfs(zs)
    pairs = [(a, b) for i, a in enumerate(zs) for b in zs[i + 1:]]
    rng = np.random.default_rng([seed, 0x30E])
    pairs = [pairs[i] for i in rng.permutation(len(pairs)).tolist()] if pairs else [(zs[0], zs[0])]
    exhaustive = max_pairs is None or len(pairs) <= max_pairs
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    best, witness, n_paths = -1, None, 0
    for a, b in pairs:
        try:
            fam = quasi_geodesic_generator(g, a, b, L, A, budget, seed, cap, exhaustive_limit)
        except NoPathsGenerated:
            continue
        exhaustive &= fam.exhaustive
        for p in fam:
            n_paths += 1
            e = int(dZ[list(p.vertices)].max())
            if e > best:
                best, witness = e, p.vertices
    if best < 0:
        raise NoPathsGenerated("no quasi-geodesic joins two points of Z")
    return MorseExcursion(Fraction(L), Fraction(A), best, len(pairs), n_paths, exhaustive, witness)


@dataclass(frozen=True)
class MorseGaugeEstimate:
    """``N-hat(L, A)`` over a grid, cumulative-maxed along both axes."""

    table: dict[tuple[Fraction, Fraction], int]
    entries: dict[tuple[Fraction, Fraction], MorseExcursion] = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "table": [
                {"L": str(L), "A": str(A), "excursion": v} for (L, A), v in sorted(self.table.items())
            ],
            "entries": [e.as_dict() for _, e in sorted(self.entries.items())],
        }


def morse_gauge(g: Graph, Z: Iterable[int], grid: Iterable[tuple], **kwargs) -> MorseGaugeEstimate:
    Z = list(Z)
    keys = sorted({(Fraction(L), Fraction(A)) for L, A in grid})
    entries = {key: morse_excursion(g, Z, key[0], key[1], **kwargs) for key in keys}
    table = {}
    for L, A in keys:
        table[(L, A)] = max(e.excursion for (l, a), e in entries.items() if l <= L and a <= A)
    return MorseGaugeEstimate(table, entries)
