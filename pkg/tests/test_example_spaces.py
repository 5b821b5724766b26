from __future__ import annotations

import pytest

from cuspkit.analysis import estimate_delta
from cuspkit.example_spaces import (
    alpha_ray,
    beta_ray,
    bigon_fatness,
    build_example_Xh,
    build_example_Y,
    strip_bigon,
)
from cuspkit.graph import HoroballPoint, SpacePoint, shortest_distance

from oracles import floyd_warshall_np


def test_smallest_y():
    y = build_example_Y(1)
    # ray x = 0..3 and a 3 x 3 strip at x = 2 sharing its centre with the ray
    assert y.graph.vertex_count == 4 + 9 - 1
    assert y.graph.is_connected()
    assert y.graph.has_tag(SpacePoint((2, 1, -1)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_beta_rays_are_geodesic(n):
    y = build_example_Y(4, height=6)
    for sign in (-1, 1):
        b = beta_ray(y, n, sign)
        assert b.certified and b.length == 2 * n + 6
    assert alpha_ray(y).certified


@pytest.mark.parametrize("n,h", [(1, 1), (2, 3), (3, 2), (2, 5)])
def test_bigon_fatness_against_brute_force(n, h):
    y = build_example_Y(3, height=h)
    p, q = strip_bigon(y, n)
    assert p.certified and q.certified
    fw = floyd_warshall_np(y.graph.vertex_count, list(y.graph.edges()))
    brute = max(max(fw[a, list(q.vertices)].min() for a in p.vertices),
                max(fw[b, list(p.vertices)].min() for b in q.vertices))
    assert bigon_fatness(y.graph, p, q) == brute == 2 * min(n, h)


def test_xh_planes_and_horoballs():
    x0 = build_example_Xh(3, 0)
    assert len(x0.planes) == 3 and not x0.horoballs
    assert not any(isinstance(t, HoroballPoint) for t in x0.graph.tags)
    xh = build_example_Xh(3, 2, plane_radius=3)
    assert len(xh.horoballs) == 3
    assert xh.graph.is_connected()
    # the wedge point is shared between the ray and the plane
    assert xh.plane_point(1, 0, 0) == xh.point(3)
    a, b = xh.plane_point(0, -3, 0), xh.plane_point(0, 3, 0)
    assert shortest_distance(x0.graph, x0.plane_point(0, -3, 0), x0.plane_point(0, 3, 0)) == 6
    assert shortest_distance(xh.graph, a, b) < 6
    with pytest.raises(ValueError):
        build_example_Xh(0, 1)


def test_strip_triangles_fatten_with_extent():
    deltas = []
    for extent in (2, 4, 6):
        xh = build_example_Xh(extent, 2, plane_radius=2)
        n = h = extent
        corners = [xh.point(2 * n, s, t) for s, t in ((-n, -h), (n, h), (-n, h), (n, -h))]
        est = estimate_delta(xh.graph, corners, 40, seed=0)
        deltas.append(est.delta)
    assert deltas[0] < deltas[1] < deltas[2]
