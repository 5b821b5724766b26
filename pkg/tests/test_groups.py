from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspkit.errors import UnsupportedFamily
from cuspkit.graph import GroupElement
from cuspkit.groups import (
    CosetId,
    FreeAbelianGroup,
    FreeGroup,
    FreeProductZZ,
    SubgroupSpec,
    cayley_ball,
    coset_decompose,
    make_group,
    parse_word,
    subgroup_membership,
)

MODELS = [FreeGroup(2), FreeGroup(3), FreeAbelianGroup(2), FreeAbelianGroup(3), FreeProductZZ()]


def words(rank):
    return st.lists(st.sampled_from([s * i for i in range(1, rank + 1) for s in (1, -1)]), max_size=10)


@pytest.mark.parametrize("m", MODELS, ids=repr)
def test_group_axioms(m):
    @given(words(m.rank), words(m.rank), words(m.rank))
    def check(a, b, c):
        x, y, z = m.from_letters(a), m.from_letters(b), m.from_letters(c)
        assert m.multiply(m.multiply(x, y), z) == m.multiply(x, m.multiply(y, z))
        assert m.multiply(x, m.inverse(x)) == m.identity
        assert m.multiply(m.identity, x) == x
        assert m.normal_form(x) == x
        assert m.from_letters(m.to_letters(x)) == x
        assert m.word_length(x) == len(m.to_letters(x))

    check()


def test_word_length_is_ball_distance():
    for m in MODELS[:3] + MODELS[4:]:
        g = cayley_ball(m, 3)
        d = g.distances_from(0)
        for v, t in enumerate(g.tags):
            assert d[v] == m.word_length(t.form)


@pytest.mark.parametrize(
    "family,rank,R,count",
    [("free", 2, 0, 1), ("free", 2, 1, 5), ("free", 2, 2, 17), ("free", 2, 3, 53),
     ("free_abelian", 2, 2, 13), ("free_abelian", 3, 1, 7), ("free_product", 2, 2, 17)],
)
def test_cayley_ball_sizes(family, rank, R, count):
    g = cayley_ball(make_group(family, rank), R)
    assert g.vertex_count == count
    assert g.is_connected()


def test_cayley_ball_edges_are_generator_steps():
    m = FreeAbelianGroup(2)
    g = cayley_ball(m, 3)
    gens = set(m.generators())
    for u, v in g.edges():
        a, b = g.tag(u).form, g.tag(v).form
        assert m.multiply(m.inverse(a), b) in gens
    # every generator step that stays in the ball is an edge
    for u, t in enumerate(g.tags):
        for s in gens:
            y = GroupElement(m.multiply(t.form, s))
            if g.has_tag(y):
                assert g.is_adjacent(u, g.index_of(y))


def test_unknown_family():
    with pytest.raises(UnsupportedFamily):
        make_group("surface", 2)
    with pytest.raises(UnsupportedFamily):
        FreeProductZZ(3)
    with pytest.raises(UnsupportedFamily):
        cayley_ball("free", 2)


def test_parse_and_format():
    m = FreeGroup(2)
    assert parse_word("aB") == [1, -2]
    assert m.format(m.parse("aAbb")) == "bb"
    assert m.format(m.identity) == "e"
    with pytest.raises(ValueError):
        m.parse("c")


def _brute_cosets(m, gens, R):
    """Classes of the radius-R ball under x ~ y iff x^-1 y is a word in the subgroup generators."""
    elements = {m.identity}
    frontier = {m.identity}
    for _ in range(R):
        frontier = {m.multiply(x, s) for x in frontier for s in m.generators()} - elements
        elements |= frontier
    letters = [s * g for g in gens for s in (1, -1)]
    H = {m.identity}
    for n in range(1, 2 * R + 1):
        for w in itertools.product(letters, repeat=n):
            H.add(m.from_letters(w))
    classes = []
    for x in sorted(elements, key=m.sort_key):
        for c in classes:
            if m.multiply(m.inverse(c[0]), x) in H:
                c.append(x)
                break
        else:
            classes.append([x])
    return classes


@pytest.mark.parametrize(
    "family,rank,gens,R",
    [("free", 2, {1}, 2), ("free", 2, {1}, 3), ("free_abelian", 2, {1}, 2),
     ("free_abelian", 3, {1, 3}, 2), ("free_product", 2, {2}, 3), ("free", 3, {2}, 2)],
)
def test_coset_decomposition_matches_enumeration(family, rank, gens, R):
    m = make_group(family, rank)
    s = SubgroupSpec(m, frozenset(gens))
    g = cayley_ball(m, R)
    got = coset_decompose(m, s, g)
    want = _brute_cosets(m, gens, R)
    assert len(got) == len(want)
    got_sets = sorted(sorted(g.tag(v).form for v in members) for members in got.values())
    assert got_sets == sorted(sorted(c) for c in want)
    for cid, members in got.items():
        assert cid.representative == min((g.tag(v).form for v in members), key=m.sort_key)


def test_free_group_ball_two_has_nine_cosets_of_a():
    m = FreeGroup(2)
    got = coset_decompose(m, SubgroupSpec.from_names(m, ["a"]), cayley_ball(m, 2))
    reps = [m.format(c.representative) for c in got]
    assert reps == ["e", "b", "B", "ab", "aB", "Ab", "AB", "bb", "BB"]
    assert len(got[CosetId(m.identity)]) == 5


def test_subgroup_membership():
    m = FreeGroup(2)
    s = SubgroupSpec.from_names(m, ["a"])
    assert subgroup_membership(s, m.parse("aaA"))
    assert not subgroup_membership(s, m.parse("ab"))
    z = FreeAbelianGroup(2)
    assert subgroup_membership(SubgroupSpec.from_names(z, ["a"]), (5, 0))
    with pytest.raises(ValueError):
        SubgroupSpec.from_names(m, ["ab"])
    with pytest.raises(ValueError):
        SubgroupSpec(m, frozenset({3}))
