from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspkit.errors import EmptyBase, NotLevelZero
from cuspkit.graph import Graph, HoroballPoint, SpacePoint, cycle_graph, path_graph, shortest_distance
from cuspkit.horoball import HoroballSpec, build_horoball, vertical_ray

from oracles import adjacency_sets, bnb_distance, floyd_warshall_np, horoball_edges_from_rules


def _h(n, depth):
    return build_horoball(HoroballSpec(path_graph(n), depth))


@given(st.integers(1, 17), st.integers(0, 5))
def test_edges_follow_the_three_rules(n, depth):
    h = _h(n, depth)
    assert sorted(h.edges()) == horoball_edges_from_rules(n, [(i, i + 1) for i in range(n - 1)], depth)


@given(st.integers(1, 12), st.integers(0, 4))
def test_distances_match_floyd_warshall(n, depth):
    h = _h(n, depth)
    fw = floyd_warshall_np(h.vertex_count, horoball_edges_from_rules(n, [(i, i + 1) for i in range(n - 1)], depth))
    for u in range(h.vertex_count):
        assert (h.distances_from(u) == fw[u]).all()


@pytest.mark.parametrize("u,v,depth,want", [(0, 8, 3, 6), (0, 4, 3, 4), (3 * 17 + 0, 3 * 17 + 8, 3, 1)])
def test_small_distances_by_branch_and_bound(u, v, depth, want):
    h = _h(17, depth)
    adj = adjacency_sets(h.vertex_count, h.edges())
    assert bnb_distance(adj, u, v, bound=12) == want
    assert shortest_distance(h, u, v) == want


def test_tags_and_levels():
    h = build_horoball(HoroballSpec(cycle_graph(6), 2, coset=(1,)))
    assert h.vertex_count == 18
    assert h.tag(0) == SpacePoint((0,))
    assert h.tag(6 + 4) == HoroballPoint((1,), SpacePoint((4,)), 1)
    # at level 2 every pair at base distance <= 4 is joined: the whole cycle
    top = list(range(12, 18))
    assert all(h.is_adjacent(a, b) for a in top for b in top if a != b)


def test_vertical_ray_is_geodesic():
    h = _h(9, 4)
    ray = vertical_ray(h, 3)
    assert ray.path.vertices == (3, 12, 21, 30, 39)
    assert ray.path.certified and ray.depth == 4
    assert shortest_distance(h, 3, 39) == 4
    with pytest.raises(NotLevelZero):
        vertical_ray(h, 12)


def test_horoball_over_single_vertex_and_errors():
    h = _h(1, 3)
    assert h.vertex_count == 4 and h.edge_count == 3
    with pytest.raises(EmptyBase):
        build_horoball(HoroballSpec(Graph.from_edges(0, [], []), 2))
    with pytest.raises(ValueError):
        HoroballSpec(path_graph(2), -1)
    with pytest.raises(ValueError):
        build_horoball(HoroballSpec(Graph.from_edges(2, [], [SpacePoint((0,)), SpacePoint((1,))]), 1))


@given(st.integers(2, 17), st.integers(1, 5))
def test_depth_zero_is_the_base_and_deeper_never_longer(n, depth):
    shallow, deep = _h(n, depth - 1), _h(n, depth)
    a, b = 0, n - 1
    assert shortest_distance(deep, a, b) <= shortest_distance(shallow, a, b)
    assert shortest_distance(_h(n, 0), a, b) == n - 1
