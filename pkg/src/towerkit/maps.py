"""Simplicial maps, map enumeration, and normalization of raw degreewise data.

`enumerate_maps` is the workhorse: it lists simplicial maps out of a finite
simplicial set by assigning images to nondegenerate cells in increasing
degree, where the candidates for a cell are exactly the target simplices
whose face tuple matches the already-assigned images of the cell's faces.
Pins (forced values) and per-cell filters support the compatibility
conditions of ends over index categories.

Targets only need the small protocol implemented by SimplicialSet and by
the lazy Ex wrapper: zero_simplices, candidates, face_simplex, degenerate,
word_section, simplex_degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .errors import CapExceeded
from .ops import compose, surjection_of_word, word_of_surjection
from .sset import Cell, Simplex, SimplicialSet, nd


@dataclass
class SimplicialMap:
    source: SimplicialSet
    target: object
    assignment: dict[Cell, object]
    label: str = ""

    def image(self, s: Simplex):
        return self.target.degenerate(s.word, self.assignment[s.cell])

    def validate(self) -> None:
        for n in range(1, len(self.source.cells)):
            for c in self.source.cells[n]:
                im = self.assignment[c]
                for i in range(n + 1):
                    want = self.image(self.source.faces[(c, i)])
                    got = self.target.face_simplex(im, i)
                    assert got == want, f"map not simplicial at ({c!r}, d_{i})"


def identity_map(x: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(x, x, {c: nd(c) for cs in x.cells for c in cs}, label="id")


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    assert f.target is g.source or f.target == g.source
    return SimplicialMap(
        f.source, g.target,
        {c: g.image(s) for c, s in f.assignment.items()},
        label=f"{g.label}.{f.label}",
    )


class Budget:
    """Shared enumeration counter; raises once the cap is crossed."""

    def __init__(self, cap: int, context: str = ""):
        self.cap = cap
        self.count = 0
        self.context = context

    def spend(self, amount: int = 1, context: str = ""):
        self.count += amount
        if self.count > self.cap:
            raise CapExceeded(context or self.context or "enumeration", self.count, self.cap)


def enumerate_maps(
    domain: SimplicialSet,
    target,
    budget: Budget,
    pins: dict[Cell, object] | None = None,
    cell_filters: dict[Cell, list[Callable]] | None = None,
    context: str = "maps",
) -> list[dict[Cell, object]]:
    """All simplicial maps domain -> target, as assignments on nondegenerate
    cells, honoring pinned values and per-cell predicates.

    Cells are assigned in closure order (every top cell directly after its
    faces) so that face constraints bind as early as possible."""
    pins = pins or {}
    cell_filters = cell_filters or {}
    order: list[tuple[int, Cell]] = closure_order(domain)
    results: list[dict[Cell, object]] = []
    assignment: dict[Cell, object] = {}

    def image_of(s: Simplex):
        return target.degenerate(s.word, assignment[s.cell])

    def rec(k: int):
        if k == len(order):
            results.append(dict(assignment))
            return
        n, c = order[k]
        if n == 0:
            cands = target.zero_simplices()
        else:
            required = tuple(image_of(domain.faces[(c, i)]) for i in range(n + 1))
            cands = target.candidates(n, required)
        pin = pins.get(c)
        if pin is not None:
            cands = [s for s in cands if s == pin]
        for pred in cell_filters.get(c, ()):
            cands = [s for s in cands if pred(s)]
        for s in cands:
            budget.spend(1, context)
            assignment[c] = s
            rec(k + 1)
            del assignment[c]

    rec(0)
    return results


def count_maps(domain: SimplicialSet, target, budget: Budget, **kw) -> int:
    return len(enumerate_maps(domain, target, budget, **kw))


def closure_order(domain: SimplicialSet) -> list[tuple[int, Cell]]:
    """Cells ordered so each appears directly after its face closure, walking
    the top-dimensional cells in listed order."""
    order: list[tuple[int, Cell]] = []
    seen: set = set()

    def emit(cell):
        if cell in seen:
            return
        seen.add(cell)
        n = domain.degree(cell)
        for i in range(n + 1) if n > 0 else ():
            emit(domain.faces[(cell, i)].cell)
        order.append((n, cell))

    for n in range(len(domain.cells) - 1, -1, -1):
        for c in domain.cells[n]:
            emit(c)
    return order


# -- raw data to normal form --------------------------------------------------


@dataclass
class RawNormalization:
    sset: SimplicialSet
    normal: dict[Hashable, Simplex]  # raw key -> normal form, all degrees


def sset_from_raw(
    bound: int,
    levels: Callable[[int], list[Hashable]],
    face: Callable[[int, int, Hashable], Hashable],
    degen: Callable[[int, int, Hashable], Hashable],
    label: str = "",
) -> RawNormalization:
    """Normalize degreewise raw data into a simplicial set.

    levels(n) lists the raw degree-n simplices (degenerate ones included);
    face/degen evaluate the elementary operators on raw keys.  A raw key y
    of degree n is degenerate exactly when degen(n-1, i, face(n, i, y)) == y
    for some i, and its normal form is computed from the witness.
    """
    cells: list[list[Hashable]] = []
    faces: dict[tuple[Hashable, int], Simplex] = {}
    normal: dict[Hashable, Simplex] = {}
    for n in range(bound + 1):
        raw = levels(n)
        assert len(raw) == len(set(raw)), f"{label}: duplicate raw keys in degree {n}"
        nondeg: list[Hashable] = []
        for y in raw:
            witness = None
            if n > 0:
                for i in range(n):
                    f = face(n, i, y)
                    if degen(n - 1, i, f) == y:
                        witness = (i, f)
                        break
            if witness is None:
                nondeg.append(y)
                normal[y] = nd(y)
            else:
                i, f = witness
                inner = normal[f]
                sigma_i = surjection_of_word((i,), n)
                sigma_inner = surjection_of_word(inner.word, n - 1)
                normal[y] = Simplex(
                    word_of_surjection(compose(sigma_inner, sigma_i)), inner.cell
                )
        for y in nondeg:
            for i in range(n + 1) if n > 0 else ():
                faces[(y, i)] = normal[face(n, i, y)]
        cells.append(nondeg)
    return RawNormalization(SimplicialSet(cells, faces, bound, label=label), normal)
