"""Group oracles with solvable normal forms, Cayley balls and coset bookkeeping.

Elements are plain ``tuple[int, ...]`` in a family-specific normal form:

* free group of rank k: the freely reduced word, letter ``+i``/``-i`` for the
  i-th generator and its inverse (1-based);
* free abelian group of rank n: the coordinate vector;
* ``Z * Z``: alternating syllables flattened as ``(gen, exp, gen, exp, ...)``
  with ``gen`` in ``{1, 2}`` and ``exp != 0``.

Subgroups are generated by a subset of the basis generators, which is what
the cusped-space construction needs (``S_i = S cap H_i`` generates ``H_i``).
For every supported family such a subgroup has infinite index as long as it
is proper; this is documented here rather than checked.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnsupportedFamily
from .graph import Graph, GroupElement

Element = tuple[int, ...]

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def letter_name(letter: int) -> str:
    name = LETTERS[abs(letter) - 1]
    return name if letter > 0 else name.upper()


def letter_rank(letter: int) -> int:
    # a < A < b < B < ...
    return 2 * (abs(letter) - 1) + (letter < 0)


def parse_word(word: str) -> list[int]:
    """``"abA"`` -> ``[1, 2, -1]``; ``"e"`` or ``""`` is the empty word."""
    word = word.strip()
    if word in ("", "e", "1"):
        return []
    out = []
    for ch in word:
        i = LETTERS.find(ch.lower())
        if i < 0:
            raise ValueError(f"unknown generator letter {ch!r}")
        out.append(i + 1 if ch.islower() else -(i + 1))
    return out


class GroupModel(ABC):
    """Word-problem oracle for one group family with a fixed basis."""

    family: str

    def __init__(self, rank: int):
        if rank < 1 or rank > len(LETTERS):
            raise ValueError(f"rank must lie in 1..{len(LETTERS)}")
        self.rank = rank

    def __repr__(self) -> str:
        return f"{type(self).__name__}(rank={self.rank})"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.rank == other.rank

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.rank))

    # -- oracle ------------------------------------------------------------

    @property
    def identity(self) -> Element:
        return ()

    @abstractmethod
    def from_letters(self, letters: Sequence[int]) -> Element: ...

    @abstractmethod
    def to_letters(self, x: Element) -> list[int]:
        """A shortest word for ``x`` (canonical for the family)."""

    @abstractmethod
    def multiply(self, x: Element, y: Element) -> Element: ...

    def inverse(self, x: Element) -> Element:
        return self.from_letters([-l for l in reversed(self.to_letters(x))])

    def normal_form(self, x: Element) -> Element:
        return self.from_letters(self.to_letters(x))

    def word_length(self, x: Element) -> int:
        return len(self.to_letters(x))

    def generators(self) -> list[Element]:
        """Symmetric generating set in the order a, A, b, B, ..."""
        return [self.from_letters([s * i]) for i in range(1, self.rank + 1) for s in (1, -1)]

    def generator_names(self) -> list[str]:
        return [letter_name(s * i) for i in range(1, self.rank + 1) for s in (1, -1)]

    def parse(self, word: str) -> Element:
        letters = parse_word(word)
        if any(abs(l) > self.rank for l in letters):
            raise ValueError(f"word {word!r} uses a letter outside rank {self.rank}")
        return self.from_letters(letters)

    def format(self, x: Element) -> str:
        return "".join(letter_name(l) for l in self.to_letters(x)) or "e"

    def sort_key(self, x: Element) -> tuple:
        """(length, lexicographic) order on canonical words, a < A < b < B."""
        letters = self.to_letters(x)
        return (len(letters), tuple(letter_rank(l) for l in letters))

    # -- subgroups ---------------------------------------------------------

    @abstractmethod
    def in_subgroup(self, x: Element, gens: frozenset[int]) -> bool:
        """Membership in the subgroup generated by basis generators ``gens`` (1-based)."""

    @abstractmethod
    def coset_key(self, x: Element, gens: frozenset[int]) -> Element:
        """Canonical label of the left coset ``x H``."""


class FreeGroup(GroupModel):
    family = "free"

    def from_letters(self, letters: Sequence[int]) -> Element:
        out: list[int] = []
        for l in letters:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(int(l))
        return tuple(out)

    def to_letters(self, x: Element) -> list[int]:
        return list(x)

    def multiply(self, x: Element, y: Element) -> Element:
        return self.from_letters(list(x) + list(y))

    def word_length(self, x: Element) -> int:
        return len(x)

    def in_subgroup(self, x: Element, gens: frozenset[int]) -> bool:
        return all(abs(l) in gens for l in x)

    def coset_key(self, x: Element, gens: frozenset[int]) -> Element:
        k = len(x)
        while k and abs(x[k - 1]) in gens:
            k -= 1
        return x[:k]


class FreeAbelianGroup(GroupModel):
    family = "free_abelian"

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def from_letters(self, letters: Sequence[int]) -> Element:
        v = [0] * self.rank
        for l in letters:
            v[abs(l) - 1] += 1 if l > 0 else -1
        return tuple(v)

    def to_letters(self, x: Element) -> list[int]:
        out = []
        for i, c in enumerate(x, start=1):
            out.extend([i if c > 0 else -i] * abs(c))
        return out

    def multiply(self, x: Element, y: Element) -> Element:
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x: Element) -> Element:
        return tuple(-a for a in x)

    def word_length(self, x: Element) -> int:
        return sum(abs(a) for a in x)

    def in_subgroup(self, x: Element, gens: frozenset[int]) -> bool:
        return all(c == 0 for i, c in enumerate(x, start=1) if i not in gens)

    def coset_key(self, x: Element, gens: frozenset[int]) -> Element:
        return tuple(0 if i in gens else c for i, c in enumerate(x, start=1))


class FreeProductZZ(GroupModel):
    """``Z * Z`` written in syllable normal form ``a^i b^j a^k ...``."""

    family = "free_product"

    def __init__(self, rank: int = 2):
        if rank != 2:
            raise UnsupportedFamily("Z*Z has exactly two factors")
        super().__init__(2)

    def from_letters(self, letters: Sequence[int]) -> Element:
        syl: list[list[int]] = []
        for l in letters:
            g, e = abs(l), (1 if l > 0 else -1)
            if syl and syl[-1][0] == g:
                syl[-1][1] += e
                if syl[-1][1] == 0:
                    syl.pop()
            else:
                syl.append([g, e])
        return tuple(v for s in syl for v in s)

    def to_letters(self, x: Element) -> list[int]:
        out = []
        for g, e in zip(x[::2], x[1::2]):
            out.extend([g if e > 0 else -g] * abs(e))
        return out

    def multiply(self, x: Element, y: Element) -> Element:
        return self.from_letters(self.to_letters(x) + self.to_letters(y))

    def word_length(self, x: Element) -> int:
        return sum(abs(e) for e in x[1::2])

    def in_subgroup(self, x: Element, gens: frozenset[int]) -> bool:
        return all(g in gens for g in x[::2])

    def coset_key(self, x: Element, gens: frozenset[int]) -> Element:
        k = len(x)
        while k and x[k - 2] in gens:
            k -= 2
        return x[:k]


FAMILIES = {
    "free": FreeGroup,
    "free_abelian": FreeAbelianGroup,
    "free_product": FreeProductZZ,
}


def make_group(family: str, rank: int = 2) -> GroupModel:
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise UnsupportedFamily(
            f"unknown family {family!r}; choose from {', '.join(sorted(FAMILIES))}"
        ) from None
    return cls(rank)


# ---------------------------------------------------------------------------
# Subgroups and cosets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupSpec:
    """Subgroup of ``parent`` generated by the basis generators ``generators`` (1-based)."""

    parent: GroupModel
    generators: frozenset[int]

    def __post_init__(self) -> None:
        gens = frozenset(int(g) for g in self.generators)
        if any(not 1 <= g <= self.parent.rank for g in gens):
            raise ValueError("subgroup generators must be a subset of the basis")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_names(cls, parent: GroupModel, names: Iterable[str]) -> "SubgroupSpec":
        gens = set()
        for name in names:
            letters = parse_word(name)
            if len(letters) != 1 or letters[0] < 0:
                raise ValueError(f"subgroup generator must be a basis letter, got {name!r}")
            gens.add(letters[0])
        return cls(parent, frozenset(gens))

    def names(self) -> list[str]:
        return [letter_name(g) for g in sorted(self.generators)]

    def edge_letters(self) -> frozenset[int]:
        return frozenset(s * g for g in self.generators for s in (1, -1))


@dataclass(frozen=True, order=False)
class CosetId:
    """A left coset ``gH`` named by its shortest, lexicographically least member."""

    representative: Element


def subgroup_membership(s: SubgroupSpec, element: Element) -> bool:
    return s.parent.in_subgroup(s.parent.normal_form(tuple(element)), s.generators)


def cayley_ball(m: GroupModel, R: int) -> Graph:
    """Ball of radius ``R`` about the identity in the Cayley graph of ``m``.

    Vertices are numbered in BFS order with generators tried in the order
    a, A, b, B, ...; edges are the generator multiplications that stay in
    the ball.
    """
    if not isinstance(m, GroupModel):
        raise UnsupportedFamily(f"not a group model: {m!r}")
    if R < 0:
        raise ValueError("radius must be non-negative")
    gens = m.generators()
    index = {m.identity: 0}
    order = [m.identity]
    queue = deque([(m.identity, 0)])
    edges = []
    while queue:
        x, d = queue.popleft()
        for s in gens:
            y = m.multiply(x, s)
            j = index.get(y)
            if j is None:
                if d == R:
                    continue
                j = index[y] = len(order)
                order.append(y)
                queue.append((y, d + 1))
            edges.append((index[x], j))
    return Graph.from_edges(len(order), edges, [GroupElement(x) for x in order])


def coset_decompose(m: GroupModel, s: SubgroupSpec, ball: Graph) -> dict[CosetId, frozenset[int]]:
    """Partition the ball's vertices into left cosets ``gH``.

    Classes are returned ordered by representative; a coset cut by the ball
    boundary is kept with whatever members the ball contains.
    """
    classes: dict[Element, list[int]] = {}
    for v, tag in enumerate(ball.tags):
        classes.setdefault(m.coset_key(tag.form, s.generators), []).append(v)
    out = []
    for members in classes.values():
        rep = min((ball.tag(v).form for v in members), key=m.sort_key)
        out.append((CosetId(rep), frozenset(members)))
    out.sort(key=lambda item: m.sort_key(item[0].representative))
    return dict(out)
