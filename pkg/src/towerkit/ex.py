"""Kan's Ex functor via barycentric subdivision, with a lazy target view.

Ex(X) has degree-n simplices the simplicial maps sd Delta^n -> X, where
sd Delta^n is the order complex of the nonempty subsets of [n].  Growth is
severe (sd Delta^4 already has 31 vertices), so besides the materialized
construction there is ExTarget, which never lists whole degrees: it only
answers candidate queries "simplices with this face tuple" by running the
map enumerator with the boundary pinned.  Iterating ExTarget gives usable
Ex^2 values inside homotopy-limit ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundError
from .ops import Monotone, codegeneracy, coface, epi_mono, missing_of_injection, word_of_surjection
from .maps import Budget, RawNormalization, SimplicialMap, enumerate_maps, sset_from_raw
from .sset import Cell, Simplex, SimplicialSet, complex_from_facets, complex_to_sset, nd


@lru_cache(maxsize=None)
def sd_sset(n: int) -> SimplicialSet:
    """Barycentric subdivision of Delta^n: order complex of nonempty subsets,
    vertices ordered by (size, lex) so chains are increasing."""
    subsets = []
    for size in range(1, n + 2):
        from itertools import combinations

        subsets.extend(combinations(range(n + 1), size))
    maximal = _chains_maximal(n)
    k = complex_from_facets(subsets, maximal)
    return complex_to_sset(k, n, label=f"sd(Delta^{n})")


def _chains_maximal(n: int) -> list[list[tuple]]:
    from itertools import permutations

    chains = []
    for perm in permutations(range(n + 1)):
        chains.append([tuple(sorted(perm[: j + 1])) for j in range(n + 1)])
    return chains


@lru_cache(maxsize=None)
def _sd_order(n: int) -> list[Cell]:
    x = sd_sset(n)
    return [c for cs in x.cells for c in cs]


@lru_cache(maxsize=None)
def _sd_index(n: int) -> dict[Cell, int]:
    return {c: j for j, c in enumerate(_sd_order(n))}


@lru_cache(maxsize=None)
def _sd_cell_image(alpha: Monotone, chain: tuple) -> tuple[tuple[int, ...], tuple]:
    """Image of an sd-cell (a chain of subsets) under sd(alpha): the word and
    underlying chain of the possibly-degenerate image."""
    seq = tuple(tuple(sorted(set(alpha(v) for v in s))) for s in chain)
    distinct = tuple(dict.fromkeys(seq))
    word = tuple(i for i in range(len(seq) - 2, -1, -1) if seq[i] == seq[i + 1])
    return word, distinct


class ExTarget:
    """Lazy Ex of a target; simplices are pairs (n, values) with values the
    tuple of images of the sd Delta^n cells, in cell order."""

    def __init__(self, base, budget: Budget, label: str = ""):
        self.base = base
        self.budget = budget
        self.label = label or f"Ex({getattr(base, 'label', '?')})"
        self._candidate_cache: dict = {}
        self._zero: list | None = None

    def simplex_degree(self, s) -> int:
        return s[0]

    def zero_simplices(self) -> list:
        if self._zero is None:
            self._zero = [(0, (v,)) for v in self.base.zero_simplices()]
        return self._zero

    def _restrict(self, alpha: Monotone, s):
        n, values = s
        assert alpha.cod == n
        m = alpha.dom
        idx = _sd_index(n)
        vals = []
        for chain in _sd_order(m):
            word, distinct = _sd_cell_image(alpha, chain)
            vals.append(self.base.degenerate(word, values[idx[distinct]]))
        return (m, tuple(vals))

    def face_simplex(self, s, i: int):
        return self._restrict(coface(s[0], i), s)

    def degenerate(self, word: tuple[int, ...], s):
        out = s
        for i in reversed(word):
            out = self._restrict(codegeneracy(out[0], i), out)
        return out

    def apply(self, alpha: Monotone, s):
        delta, sigma = epi_mono(alpha)
        t = s
        for j in missing_of_injection(delta):
            t = self.face_simplex(t, j)
        return self.degenerate(word_of_surjection(sigma), t)

    def word_section(self, word: tuple[int, ...], rhs):
        if not word:
            return rhs
        n = rhs[0]
        # candidate: restrict along a section of the word's surjection
        from .ops import surjection_of_word

        sigma = surjection_of_word(word, n)
        section = Monotone(n, tuple(sigma.img.index(v) for v in range(sigma.cod + 1)))
        y = self._restrict(section, rhs)
        return y if self.degenerate(word, y) == rhs else None

    def faces_tuple(self, s) -> tuple:
        n = s[0]
        return tuple(self.face_simplex(s, i) for i in range(n + 1))

    def candidates(self, n: int, required: tuple) -> list:
        key = (n, required)
        if key in self._candidate_cache:
            return self._candidate_cache[key]
        dom = sd_sset(n)
        order = _sd_order(n)
        idx = _sd_index(n)
        pins: dict[Cell, object] = {}
        ok = True
        for i in range(n + 1):
            ri = required[i]
            assert ri[0] == n - 1
            face_mono = coface(n, i)
            for j, chain in enumerate(_sd_order(n - 1)):
                word, distinct = _sd_cell_image(face_mono, chain)
                assert not word, "sd of an injection cannot collapse"
                prev = pins.get(distinct)
                if prev is not None and prev != ri[1][j]:
                    ok = False
                    break
                pins[distinct] = ri[1][j]
            if not ok:
                break
        if not ok:
            result: list = []
        else:
            maps = enumerate_maps(
                dom, self.base, self.budget, pins=pins,
                context=f"{self.label} candidates degree {n}",
            )
            result = [(n, tuple(m[c] for c in order)) for m in maps]
        self._candidate_cache[key] = result
        return result


def ex_target(base, depth: int, budget: Budget) -> object:
    """Iterate the lazy wrapper; depth 0 returns the base unchanged."""
    out = base
    for _ in range(depth):
        out = ExTarget(out, budget)
    return out


def materialize(target, bound: int, budget: Budget, label: str = "") -> RawNormalization:
    """List every simplex of a lazy Ex target through the bound and build the
    concrete simplicial set."""
    if isinstance(target, SimplicialSet):
        raise ValueError("materialize expects a lazy target")

    def levels(n):
        dom = sd_sset(n)
        order = _sd_order(n)
        maps = enumerate_maps(dom, target.base, budget, context=f"Ex materialize degree {n}")
        return [(n, tuple(m[c] for c in order)) for m in maps]

    def face(n, i, key):
        return target.face_simplex(key, i)

    def degen(n, i, key):
        return target.degenerate((i,), key)

    return sset_from_raw(bound, levels, face, degen, label=label or target.label)


def ex_approx(x: SimplicialSet, depth: int, bound: int,
              budget: Budget | None = None) -> tuple[SimplicialSet, SimplicialMap]:
    """Materialized depth-fold Ex with the natural inclusion X -> Ex^depth X."""
    if depth < 0:
        raise BoundError("ex depth must be >= 0")
    if bound > x.bound:
        raise BoundError(f"ex_approx bound {bound} exceeds input bound {x.bound}")
    budget = budget or Budget(10**9)
    from .maps import identity_map

    current = x
    incl = identity_map(x)
    for _ in range(depth):
        lazy = ExTarget(current, budget)
        raw = materialize(lazy, bound, budget)
        nxt = raw.sset
        step = {}
        for cs in current.cells:
            for c in cs:
                n = current.degree(c)
                key = (
                    n,
                    tuple(
                        current.apply(
                            Monotone(n, tuple(max(s) for s in chain)), nd(c)
                        )
                        for chain in _sd_order(n)
                    ),
                )
                step[c] = raw.normal[key]
        step_map = SimplicialMap(current, nxt, step, label="lastvertex")
        incl = SimplicialMap(
            x, nxt, {c: _push(step_map, incl.assignment[c]) for c in incl.assignment},
            label=f"X->Ex^{depth}",
        )
        current = nxt
    return current, incl


def _push(f: SimplicialMap, s: Simplex) -> Simplex:
    return f.image(s)


def ex_map(f: SimplicialMap, src_raw: RawNormalization, tgt_raw: RawNormalization,
           bound: int) -> SimplicialMap:
    """Ex applied to a simplicial map, between materialized Ex objects."""
    assignment = {}
    for cs in src_raw.sset.cells:
        for key in cs:
            n, values = key
            assignment[key] = tgt_raw.normal[(n, tuple(f.image(v) for v in values))]
    return SimplicialMap(src_raw.sset, tgt_raw.sset, assignment, label=f"Ex({f.label})")
