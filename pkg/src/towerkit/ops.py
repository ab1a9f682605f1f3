"""Arithmetic of monotone maps between finite ordinals.

Every simplicial operator is a monotone map [m] -> [n]; composites,
epi-mono factorizations and the translation between surjections and
strictly decreasing degeneracy words live here.  All higher structure
(face tables, degeneracy normal forms, simplicial maps) reduces to this
module, so it is kept tiny and exhaustively tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


@dataclass(frozen=True)
class Monotone:
    """A monotone map [dom] -> [cod], stored by its tuple of images."""

    cod: int
    img: tuple[int, ...]

    def __post_init__(self):
        assert self.img, "maps out of the empty ordinal are not used here"
        assert all(0 <= v <= self.cod for v in self.img)
        assert all(a <= b for a, b in zip(self.img, self.img[1:]))

    @property
    def dom(self) -> int:
        return len(self.img) - 1

    def __call__(self, v: int) -> int:
        return self.img[v]

    def is_injective(self) -> bool:
        return len(set(self.img)) == len(self.img)

    def is_surjective(self) -> bool:
        return len(set(self.img)) == self.cod + 1

    def is_identity(self) -> bool:
        return self.cod == self.dom and self.img == tuple(range(self.cod + 1))


def identity(n: int) -> Monotone:
    return Monotone(n, tuple(range(n + 1)))


def coface(n: int, i: int) -> Monotone:
    """The injection [n-1] -> [n] missing i."""
    assert n >= 1 and 0 <= i <= n
    return Monotone(n, tuple(v for v in range(n + 1) if v != i))


def codegeneracy(n: int, i: int) -> Monotone:
    """The surjection [n+1] -> [n] hitting i twice."""
    assert n >= 0 and 0 <= i <= n
    return Monotone(n, tuple(v - 1 if v > i else v for v in range(n + 2)))


def compose(g: Monotone, f: Monotone) -> Monotone:
    """g after f."""
    assert f.cod == g.dom, f"cannot compose [{f.dom}]->[{f.cod}] with [{g.dom}]->[{g.cod}]"
    return Monotone(g.cod, tuple(g.img[v] for v in f.img))


def epi_mono(alpha: Monotone) -> tuple[Monotone, Monotone]:
    """Factor alpha = delta . sigma with sigma surjective, delta injective."""
    image = sorted(set(alpha.img))
    pos = {v: k for k, v in enumerate(image)}
    sigma = Monotone(len(image) - 1, tuple(pos[v] for v in alpha.img))
    delta = Monotone(alpha.cod, tuple(image))
    return delta, sigma


def word_of_surjection(sigma: Monotone) -> tuple[int, ...]:
    """Strictly decreasing degeneracy word of a surjection.

    The word (i_1 > ... > i_r) names the operator s_{i_1} ... s_{i_r};
    its entries are exactly the positions i with sigma(i) = sigma(i+1).
    """
    assert sigma.is_surjective()
    return tuple(i for i in range(sigma.dom - 1, -1, -1) if sigma.img[i] == sigma.img[i + 1])


def surjection_of_word(word: tuple[int, ...], dom: int) -> Monotone:
    """Inverse of word_of_surjection; dom is the degree the word acts into."""
    assert all(a > b for a, b in zip(word, word[1:])), f"word not strictly decreasing: {word}"
    collapse = set(word)
    img = []
    v = 0
    for i in range(dom + 1):
        img.append(v)
        if i not in collapse:
            v += 1
    assert v == dom + 1 - len(word)
    return Monotone(dom - len(word), tuple(img))


def missing_of_injection(delta: Monotone) -> tuple[int, ...]:
    """Targets not hit, in decreasing order: delta = d_{m_1} . ... as cofaces."""
    assert delta.is_injective()
    hit = set(delta.img)
    return tuple(j for j in range(delta.cod, -1, -1) if j not in hit)


@lru_cache(maxsize=None)
def all_monotone(dom: int, cod: int) -> tuple[Monotone, ...]:
    """All monotone maps [dom] -> [cod], in lexicographic order of images."""
    # weakly increasing tuples in [cod] of length dom+1, via the standard
    # stars-and-bars bijection with strictly increasing tuples; combinations
    # already runs in lexicographic order
    return tuple(
        Monotone(cod, tuple(v - k for k, v in enumerate(img)))
        for img in combinations(range(cod + dom + 1), dom + 1)
    )


@lru_cache(maxsize=None)
def all_surjections(dom: int, cod: int) -> tuple[Monotone, ...]:
    return tuple(m for m in all_monotone(dom, cod) if m.is_surjective())


@lru_cache(maxsize=None)
def words_into(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """All degeneracy words taking degree-p simplices to degree n."""
    if p > n:
        return ()
    return tuple(word_of_surjection(s) for s in all_surjections(n, p))
