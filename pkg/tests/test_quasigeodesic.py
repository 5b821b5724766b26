from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspkit.analysis import morse_excursion, morse_gauge, quasi_geodesic_generator
from cuspkit.graph import Graph, GroupElement, SpacePoint, all_geodesics, grid_graph, path_graph
from cuspkit.groups import cayley_ball, make_group
from cuspkit.horoball import HoroballSpec, build_horoball, vertical_ray

from oracles import adjacency_sets, floyd_warshall, quasi_geodesic_by_definition


def _brute_family(n, edges, u, v, L, A):
    """Every walk from u to v of length at most L (d + A) satisfying the definition."""
    dist = floyd_warshall(n, edges)
    adj = adjacency_sets(n, edges)
    limit = Fraction(L) * (int(dist[u][v]) + Fraction(A))
    out = set()

    def go(path):
        if path[-1] == v and quasi_geodesic_by_definition(dist, path, L, A):
            out.add(tuple(path))
        if len(path) - 1 >= limit:
            return
        for w in adj[path[-1]]:
            go(path + [w])

    go([u])
    return out


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 7))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return n, sorted(edges)


@given(small_graphs(), st.data(), st.sampled_from([(1, 0), (2, 0), (Fraction(3, 2), 1), (2, 1)]))
def test_exhaustive_family_matches_brute_enumeration(graph, data, LA):
    n, edges = graph
    g = Graph.from_edges(n, edges, [SpacePoint((i,)) for i in range(n)])
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1))
    L, A = LA
    fam = quasi_geodesic_generator(g, u, v, L, A, budget=8, cap=10**6)
    want = _brute_family(n, edges, u, v, L, A)
    assert {p.vertices for p in fam} == want
    assert fam.exhaustive or (L, A) == (1, 0)


def test_geodesics_only_when_L_is_one_or_no_budget():
    g = grid_graph(range(4), range(4))
    u, v = 0, g.vertex_count - 1
    geo = {p.vertices for p in all_geodesics(g, u, v, 100)}
    assert len(geo) == 20
    assert {p.vertices for p in quasi_geodesic_generator(g, u, v, 1, 0, cap=100)} == geo
    assert {p.vertices for p in quasi_geodesic_generator(g, u, v, 3, 2, budget=0, cap=100)} == geo


def test_plane_detour_is_found_and_certified():
    m = make_group("free_abelian", 2)
    g = cayley_ball(m, 4)
    u, v = g.index_of(GroupElement((0, 0))), g.index_of(GroupElement((4, 0)))
    fam = quasi_geodesic_generator(g, u, v, 3, 0, budget=64, seed=1, exhaustive_limit=2000)
    via = g.index_of(GroupElement((2, 2)))
    assert any(via in p.vertices for p in fam)
    dist = floyd_warshall(g.vertex_count, list(g.edges()))
    assert all(quasi_geodesic_by_definition(dist, p.vertices, 3, 0) for p in fam)
    assert fam.detours > 0


def test_validation():
    with pytest.raises(ValueError):
        quasi_geodesic_generator(path_graph(3), 0, 2, Fraction(1, 2))


# -- Morse gauge ------------------------------------------------------------------


def test_tree_targets_have_no_excursion():
    m = make_group("free", 2)
    g = cayley_ball(m, 4)
    Z = [g.index_of(GroupElement(m.parse(w))) for w in ("aaaa", "aaa", "aa", "a", "e", "A", "AA")]
    ex = morse_excursion(g, Z, 3, 0, max_pairs=None)
    assert ex.excursion == 0 and ex.exhaustive
    # an additive constant lets a path leave and come back
    assert morse_excursion(g, Z, 3, 2, max_pairs=None).excursion > 0


def test_vertical_ray_in_a_horoball_stays_close():
    h = build_horoball(HoroballSpec(path_graph(17), 4))
    Z = vertical_ray(h, 8).path.vertices
    ex = morse_excursion(h, Z, 2, 0, max_pairs=None, exhaustive_limit=200_000)
    assert ex.exhaustive and ex.excursion <= 4


def test_plane_axis_excursion_grows_with_L():
    m = make_group("free_abelian", 2)
    g = cayley_ball(m, 8)
    axis = [g.index_of(GroupElement((x, 0))) for x in range(-8, 9)]
    gauge = morse_gauge(g, axis, [(1, 0), (2, 0), (3, 0)], budget=64, max_pairs=24, exhaustive_limit=3000)
    vals = [gauge.table[(Fraction(L), Fraction(0))] for L in (1, 2, 3)]
    assert vals[0] == 0
    assert vals == sorted(vals) and vals[-1] >= 4


def test_battery_separates_contracting_from_not():
    """A tree geodesic keeps every (3, 0) excursion at 0; a plane axis of the same length does not."""
    fm, am = make_group("free", 2), make_group("free_abelian", 2)
    tg, pg = cayley_ball(fm, 6), cayley_ball(am, 6)
    tree_axis = [tg.index_of(GroupElement(fm.parse("a" * k if k >= 0 else "A" * -k))) for k in range(-6, 7)]
    plane_axis = [pg.index_of(GroupElement((x, 0))) for x in range(-6, 7)]
    kw = dict(budget=48, max_pairs=32, exhaustive_limit=3000)
    small = [morse_excursion(pg, plane_axis[6 - k:7 + k], 3, 0, **kw).excursion for k in (2, 4, 6)]
    assert small == sorted(small) and small[-1] > small[0]
    assert all(morse_excursion(tg, tree_axis[6 - k:7 + k], 3, 0, **kw).excursion == 0 for k in (2, 4, 6))
