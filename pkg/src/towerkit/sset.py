"""Simplicial complexes and simplicial sets in degeneracy normal form.

A simplicial set is stored by its nondegenerate cells per degree together
with a face table whose entries are pairs (degeneracy word, nondegenerate
cell).  Every simplex is uniquely such a pair, so arbitrary simplicial
operators can be evaluated by composing monotone maps and re-normalizing;
`apply` below is the single place where that arithmetic happens.

All constructions take an explicit degree bound: cells are computed for
degrees 0..bound and nothing above is ever represented implicitly, except
through degeneracy words (which is exact).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, NamedTuple

from .errors import BoundError, LabelCollision
from .ops import (
    Monotone,
    codegeneracy,
    coface,
    compose,
    epi_mono,
    missing_of_injection,
    surjection_of_word,
    word_of_surjection,
    words_into,
)

Cell = Hashable


class Simplex(NamedTuple):
    """A simplex in normal form: a strictly decreasing degeneracy word
    applied to a nondegenerate cell."""

    word: tuple[int, ...]
    cell: Cell

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)


def nd(cell: Cell) -> Simplex:
    """The nondegenerate simplex on a cell."""
    return Simplex((), cell)


class SimplicialSet:
    def __init__(
        self,
        cells: Iterable[Iterable[Cell]],
        faces: dict[tuple[Cell, int], Simplex],
        bound: int,
        label: str = "",
    ):
        self.bound = bound
        self.cells: list[list[Cell]] = [list(cs) for cs in cells]
        while len(self.cells) <= bound:
            self.cells.append([])
        self.faces = faces
        self.label = label
        self._deg: dict[Cell, int] = {}
        for n, cs in enumerate(self.cells):
            for c in cs:
                if c in self._deg:
                    raise ValueError(f"duplicate cell {c!r}")
                self._deg[c] = n
        self._by_faces: dict[int, dict] = {}

    # -- basic queries ---------------------------------------------------

    def degree(self, cell: Cell) -> int:
        return self._deg[cell]

    def simplex_degree(self, s: Simplex) -> int:
        return len(s.word) + self._deg[s.cell]

    def n_cells(self, n: int) -> list[Cell]:
        if n > self.bound:
            raise BoundError(f"{self.label or 'simplicial set'}: degree {n} > bound {self.bound}")
        return self.cells[n]

    def dim(self) -> int:
        """Top degree carrying a nondegenerate cell (-1 if empty)."""
        for n in range(len(self.cells) - 1, -1, -1):
            if self.cells[n]:
                return n
        return -1

    def is_empty(self) -> bool:
        return not self.cells[0]

    def f_vector(self) -> tuple[int, ...]:
        d = self.dim()
        return tuple(len(self.cells[n]) for n in range(d + 1))

    def all_simplices(self, n: int) -> list[Simplex]:
        """Every degree-n simplex, degenerate ones included."""
        out = []
        for p in range(min(n, len(self.cells) - 1) + 1):
            for word in words_into(n, p):
                for c in self.cells[p]:
                    out.append(Simplex(word, c))
        return out

    def zero_simplices(self) -> list[Simplex]:
        return [nd(c) for c in self.cells[0]]

    # -- operator arithmetic ----------------------------------------------

    def face_simplex(self, s: Simplex, i: int) -> Simplex:
        if not s.word:
            return self.faces[(s.cell, i)]
        n = self.simplex_degree(s)
        return self.apply(coface(n, i), s)

    def apply(self, alpha: Monotone, s: Simplex) -> Simplex:
        """Evaluate the simplicial operator of a monotone map on a simplex.

        Factor (word surjection) . alpha = delta . sigma, push delta through
        the stored face table, and fold sigma back into the word.
        """
        n = self.simplex_degree(s)
        assert alpha.cod == n, f"operator into degree {alpha.cod} applied to degree-{n} simplex"
        sigma_s = surjection_of_word(s.word, n)
        delta, sigma = epi_mono(compose(sigma_s, alpha))
        t = nd(s.cell)
        for j in missing_of_injection(delta):
            t = self.face_simplex(t, j)
        sigma_t = surjection_of_word(t.word, delta.dom)
        return Simplex(word_of_surjection(compose(sigma_t, sigma)), t.cell)

    def degenerate(self, word: tuple[int, ...], s: Simplex) -> Simplex:
        if not word:
            return s
        n = self.simplex_degree(s)
        sigma_w = surjection_of_word(word, n + len(word))
        sigma_s = surjection_of_word(s.word, n)
        return Simplex(word_of_surjection(compose(sigma_s, sigma_w)), s.cell)

    def word_section(self, word: tuple[int, ...], rhs: Simplex) -> Simplex | None:
        """Solve degenerate(word, y) == rhs for y, if a solution exists."""
        if not word:
            return rhs
        n = self.simplex_degree(rhs)
        sigma_w = surjection_of_word(word, n)
        sigma_r = surjection_of_word(rhs.word, n)
        # candidate sigma_y on [n - len(word)] via a section of sigma_w
        section = [sigma_w.img.index(v) for v in range(sigma_w.cod + 1)]
        img = tuple(sigma_r.img[j] for j in section)
        if any(a > b for a, b in zip(img, img[1:])):
            return None
        sigma_y = Monotone(sigma_r.cod, img)
        if not sigma_y.is_surjective():
            return None
        if compose(sigma_y, sigma_w).img != sigma_r.img:
            return None
        return Simplex(word_of_surjection(sigma_y), rhs.cell)

    def faces_tuple(self, s: Simplex) -> tuple[Simplex, ...]:
        n = self.simplex_degree(s)
        return tuple(self.face_simplex(s, i) for i in range(n + 1))

    def candidates(self, n: int, required: tuple[Simplex, ...]) -> list[Simplex]:
        """All degree-n simplices whose face tuple equals `required`."""
        if n not in self._by_faces:
            index: dict[tuple, list[Simplex]] = {}
            for s in self.all_simplices(n):
                index.setdefault(self.faces_tuple(s), []).append(s)
            self._by_faces[n] = index
        return self._by_faces[n].get(required, [])

    # -- checks ------------------------------------------------------------

    def validate(self) -> None:
        """Exhaustively check the simplicial identities through the bound."""
        for n in range(1, len(self.cells)):
            for c in self.cells[n]:
                for i in range(n + 1):
                    s = self.faces.get((c, i))
                    assert s is not None, f"missing face ({c!r},{i})"
                    assert self.simplex_degree(s) == n - 1
                    assert all(a > b for a, b in zip(s.word, s.word[1:]))
                    assert s.cell in self._deg
        # d_i d_j = d_{j-1} d_i for i < j, on all nondegenerate cells
        for n in range(2, len(self.cells)):
            for c in self.cells[n]:
                for j in range(1, n + 1):
                    for i in range(j):
                        left = self.face_simplex(self.face_simplex(nd(c), j), i)
                        right = self.face_simplex(self.face_simplex(nd(c), i), j - 1)
                        assert left == right, f"dd identity fails on {c!r} (i={i}, j={j})"
        # mixed identities, checked through the operator arithmetic on s_i c
        for n in range(0, len(self.cells) - 1):
            for c in self.cells[n]:
                for i in range(n + 1):
                    s = Simplex((i,), c)
                    assert self.face_simplex(s, i) == nd(c)
                    assert self.face_simplex(s, i + 1) == nd(c)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        names = {c: [n, k] for n, cs in enumerate(self.cells) for k, c in enumerate(cs)}
        return {
            "label": self.label,
            "bound": self.bound,
            "cells": [[repr(c) for c in cs] for cs in self.cells],
            "faces": [
                [*names[c], i, list(s.word), *names[s.cell]]
                for (c, i), s in sorted(self.faces.items(), key=lambda kv: (names[kv[0][0]], kv[0][1]))
            ],
        }


def same_sset(x: SimplicialSet, y: SimplicialSet) -> bool:
    """Structural equality on cells and face tables (bounds may differ)."""
    top = max(len(x.cells), len(y.cells))
    for n in range(top):
        cx = x.cells[n] if n < len(x.cells) else []
        cy = y.cells[n] if n < len(y.cells) else []
        if cx != cy:
            return False
    return all(x.faces[k] == y.faces[k] for k in x.faces) and set(x.faces) == set(y.faces)


# -- simplicial complexes ---------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex with an ordered vertex list."""

    vertices: tuple
    faces: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pos = {v: k for k, v in enumerate(self.vertices)}
        if len(pos) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for f in self.faces:
            if not f:
                raise ValueError("empty face listed")
            for v in f:
                if v not in pos:
                    raise ValueError(f"face {set(f)!r} uses unlisted vertex {v!r}")
            for k in range(1, len(f)):
                for sub in combinations(sorted(f, key=pos.get), k):
                    if frozenset(sub) not in self.faces:
                        raise ValueError(f"closure violated: {set(sub)!r} missing under {set(f)!r}")
        for v in self.vertices:
            if frozenset([v]) not in self.faces:
                raise ValueError(f"vertex {v!r} is not a face")

    def vertex_pos(self, v) -> int:
        return self.vertices.index(v)

    def sorted_face(self, f: frozenset) -> tuple:
        pos = {v: k for k, v in enumerate(self.vertices)}
        return tuple(sorted(f, key=pos.get))

    def faces_sorted(self) -> list[tuple]:
        pos = {v: k for k, v in enumerate(self.vertices)}
        keyed = [tuple(sorted(f, key=pos.get)) for f in self.faces]
        return sorted(keyed, key=lambda t: (len(t), tuple(pos[v] for v in t)))

    def dim(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    def f_vector(self) -> tuple[int, ...]:
        d = self.dim()
        counts = [0] * (d + 1)
        for f in self.faces:
            counts[len(f) - 1] += 1
        return tuple(counts)

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, frozenset(f for f in self.faces if len(f) <= k + 1))

    def to_json(self) -> dict:
        facets = [list(t) for t in self.faces_sorted() if not any(
            set(t) < set(u) for u in (set(f) for f in self.faces))]
        return {"vertices": list(self.vertices), "facets": facets}


def complex_from_facets(vertices: Iterable, facets: Iterable[Iterable]) -> SimplicialComplex:
    """Build a complex as the downward closure of the given facets."""
    vertices = tuple(vertices)
    faces = set(frozenset([v]) for v in vertices)
    for facet in facets:
        facet = list(facet)
        for k in range(1, len(facet) + 1):
            for sub in combinations(facet, k):
                faces.add(frozenset(sub))
    return SimplicialComplex(vertices, frozenset(faces))


def complex_from_json(data: dict) -> SimplicialComplex:
    return complex_from_facets(data["vertices"], data["facets"])


def point_complex(label="*") -> SimplicialComplex:
    return complex_from_facets([label], [[label]])


def discrete_complex(labels: Iterable) -> SimplicialComplex:
    labels = list(labels)
    return complex_from_facets(labels, [[v] for v in labels])


def simplex_complex(n: int) -> SimplicialComplex:
    return complex_from_facets(range(n + 1), [list(range(n + 1))])


def join_complexes(a: SimplicialComplex, b: SimplicialComplex, relabel: bool = True) -> SimplicialComplex:
    """Join: faces are unions of a face (or nothing) from each side.

    With relabel=True the two vertex sets are disjointified by tagging with
    0 and 1; otherwise overlapping labels raise.
    """
    if relabel:
        la = {v: (0, v) for v in a.vertices}
        lb = {v: (1, v) for v in b.vertices}
    else:
        if set(a.vertices) & set(b.vertices):
            raise LabelCollision(f"shared labels: {set(a.vertices) & set(b.vertices)}")
        la = {v: v for v in a.vertices}
        lb = {v: v for v in b.vertices}
    vertices = tuple(la[v] for v in a.vertices) + tuple(lb[v] for v in b.vertices)
    faces = set()
    fa = [frozenset()] + [frozenset(la[v] for v in f) for f in a.faces]
    fb = [frozenset()] + [frozenset(lb[v] for v in f) for f in b.faces]
    for x in fa:
        for y in fb:
            if x or y:
                faces.add(x | y)
    return SimplicialComplex(vertices, frozenset(faces))


def join_many(parts: list[SimplicialComplex]) -> SimplicialComplex:
    """Iterated join with flat position tags (i, v)."""
    assert parts
    tagged = [
        SimplicialComplex(
            tuple((i, v) for v in k.vertices),
            frozenset(frozenset((i, v) for v in f) for f in k.faces),
        )
        for i, k in enumerate(parts)
    ]
    out = tagged[0]
    for nxt in tagged[1:]:
        out = join_complexes(out, nxt, relabel=False)
    return out


def disjoint_union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    la = {v: (0, v) for v in a.vertices}
    lb = {v: (1, v) for v in b.vertices}
    vertices = tuple(la[v] for v in a.vertices) + tuple(lb[v] for v in b.vertices)
    faces = set(frozenset(la[v] for v in f) for f in a.faces)
    faces |= set(frozenset(lb[v] for v in f) for f in b.faces)
    return SimplicialComplex(vertices, frozenset(faces))


def wedge(a: SimplicialComplex, b: SimplicialComplex, va=None, vb=None) -> SimplicialComplex:
    """One-point union, gluing vb of b onto va of a (defaults: first vertices)."""
    va = a.vertices[0] if va is None else va
    vb = b.vertices[0] if vb is None else vb
    la = {v: (0, v) for v in a.vertices}
    lb = {v: ((0, va) if v == vb else (1, v)) for v in b.vertices}
    vertices = tuple(la[v] for v in a.vertices) + tuple(lb[v] for v in b.vertices if v != vb)
    faces = set(frozenset(la[v] for v in f) for f in a.faces)
    faces |= set(frozenset(lb[v] for v in f) for f in b.faces)
    return SimplicialComplex(vertices, frozenset(faces))


# -- complexes to simplicial sets -------------------------------------------


def complex_to_sset(k: SimplicialComplex, bound: int, label: str = "") -> SimplicialSet:
    """Cells in degree n are the (n+1)-element faces, ordered by the global
    vertex order; faces act by deleting a vertex."""
    if bound < 0:
        raise BoundError("bound must be >= 0")
    pos = {v: i for i, v in enumerate(k.vertices)}
    cells: list[list[Cell]] = [[] for _ in range(bound + 1)]
    for t in k.faces_sorted():
        if len(t) - 1 <= bound:
            cells[len(t) - 1].append(t)
    faces: dict[tuple[Cell, int], Simplex] = {}
    for n in range(1, bound + 1):
        for t in cells[n]:
            for i in range(n + 1):
                faces[(t, i)] = nd(t[:i] + t[i + 1 :])
    return SimplicialSet(cells, faces, bound, label=label or f"complex({len(k.vertices)}v)")


def standard_simplex(n: int, bound: int) -> SimplicialSet:
    if n < 0 or bound < 0:
        raise BoundError("n and bound must be >= 0")
    return complex_to_sset(simplex_complex(n), bound, label=f"Delta^{n}")


def skeleton(x: SimplicialSet, k: int) -> SimplicialSet:
    """Discard nondegenerate cells above degree k."""
    if k > x.bound:
        raise BoundError(f"skeleton degree {k} exceeds bound {x.bound}")
    cells = [list(cs) if n <= k else [] for n, cs in enumerate(x.cells)]
    keep = {c for n in range(min(k, len(cells) - 1) + 1) for c in cells[n]}
    faces = {key: s for key, s in x.faces.items() if key[0] in keep}
    return SimplicialSet(cells, faces, x.bound, label=f"sk_{k}({x.label})")


def vertex_map_sset(
    source: SimplicialSet,
    target: SimplicialSet,
    vmap: dict,
    target_pos: dict,
) -> dict[Cell, Simplex]:
    """Assignment of a simplicial map between complex-built simplicial sets
    induced by a vertex map that is weakly monotone on every face.

    Cells are vertex tuples; the image of a cell is the normal form of its
    image vertex sequence (repeats become degeneracies).
    """
    assignment: dict[Cell, Simplex] = {}
    for n in range(len(source.cells)):
        for t in source.cells[n]:
            seq = tuple(vmap[v] for v in t)
            assert all(
                target_pos[a] <= target_pos[b] for a, b in zip(seq, seq[1:])
            ), f"vertex map not monotone on {t!r}"
            distinct = tuple(dict.fromkeys(seq))
            word = tuple(i for i in range(len(seq) - 2, -1, -1) if seq[i] == seq[i + 1])
            assert distinct in target._deg, f"image {distinct!r} is not a cell of the target"
            assignment[t] = Simplex(word, distinct)
    return assignment
