"""Brute-force reference implementations, independent of the library's BFS code."""
from __future__ import annotations

import itertools
from fractions import Fraction

INF = float("inf")


def adjacency_sets(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def floyd_warshall_np(n: int, edges):
    """Vectorized Floyd-Warshall; unreachable pairs stay at inf."""
    import numpy as np

    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        d[u, v] = d[v, u] = 1
    for k in range(n):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    return d


def floyd_warshall(n: int, edges) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def horoball_edges_from_rules(base_n: int, base_edges, depth: int):
    """Vertex (v, k) -> k * base_n + v, following the three adjacency rules literally."""
    bd = floyd_warshall(base_n, base_edges)
    edges = set()
    for u, v in base_edges:
        edges.add((min(u, v), max(u, v)))
    for k in range(1, depth + 1):
        for v, w in itertools.combinations(range(base_n), 2):
            if 0 < bd[v][w] <= 2**k:
                edges.add((k * base_n + v, k * base_n + w))
    for k in range(depth):
        for v in range(base_n):
            edges.add((k * base_n + v, (k + 1) * base_n + v))
    return sorted(edges)


def bnb_distance(adj: list[set[int]], u: int, v: int, bound: int) -> int | None:
    """Shortest simple-path length by depth-first branch and bound (no BFS)."""
    best = [bound + 1]

    def go(x: int, length: int, seen: set[int]) -> None:
        if length >= best[0]:
            return
        if x == v:
            best[0] = length
            return
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                go(y, length + 1, seen)
                seen.remove(y)

    go(u, 0, {u})
    return best[0] if best[0] <= bound else None


def brute_barycenter(dist, sides) -> int:
    """min over q of max over sides of min over side vertices of d(q, s)."""
    n = len(dist)
    best = INF
    for q in range(n):
        worst = max(min(dist[q][s] for s in side) for side in sides)
        best = min(best, worst)
    return int(best)


def quasi_geodesic_by_definition(dist, path, L, A) -> bool:
    L, A = Fraction(L), Fraction(A)
    for i, j in itertools.combinations(range(len(path)), 2):
        d = dist[path[i]][path[j]]
        t = Fraction(j - i)
        if not (t / L - A <= d <= L * t + A):
            return False
    return True
