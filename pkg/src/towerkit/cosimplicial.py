"""Truncated cosimplicial simplicial sets and their builders.

Levels are simplicial sets (possibly lazy Ex wrappers); structure maps are
stored for every monotone map within the cobound.  The geometric builders
(k-skeleton functors, join powers with a fixed complex) construct levels as
simplicial complexes whose structure maps come from vertex maps, so the
cosimplicial identities hold by functoriality of the normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import BoundError
from .maps import Budget, SimplicialMap, enumerate_maps, sset_from_raw
from .ops import Monotone, all_monotone, codegeneracy, coface, compose as mono_compose
from .sset import (
    SimplicialComplex,
    SimplicialSet,
    complex_to_sset,
    discrete_complex,
    join_complexes,
    join_many,
    nd,
    simplex_complex,
    vertex_map_sset,
)


@dataclass(frozen=True)
class FSpec:
    """A space-level functor built from identity, constant, and join-with
    steps, applied left to right."""

    steps: tuple = (("identity",),)

    @staticmethod
    def identity() -> "FSpec":
        return FSpec((("identity",),))

    @staticmethod
    def constant(y: SimplicialComplex) -> "FSpec":
        return FSpec((("constant", y),))

    @staticmethod
    def join_with(a: SimplicialComplex) -> "FSpec":
        return FSpec((("join_with", a),))

    def then(self, other: "FSpec") -> "FSpec":
        return FSpec(self.steps + other.steps)

    def value(self, k: SimplicialComplex) -> SimplicialComplex:
        out = k
        for step in self.steps:
            if step[0] == "identity":
                continue
            if step[0] == "constant":
                out = step[1]
            elif step[0] == "join_with":
                out = join_complexes(out, step[1])
        return out

    def transport(self, vmap: dict) -> dict:
        """Vertex map F(K) -> F(K') induced by a vertex map K -> K'."""
        out = dict(vmap)
        for step in self.steps:
            if step[0] == "identity":
                continue
            if step[0] == "constant":
                out = {v: v for v in step[1].vertices}
            elif step[0] == "join_with":
                new = {(0, v): (0, w) for v, w in out.items()}
                new.update({(1, a): (1, a) for a in step[1].vertices})
                out = new
        return out

    def describe(self) -> str:
        parts = []
        for step in self.steps:
            if step[0] == "identity":
                parts.append("identity")
            elif step[0] == "constant":
                parts.append(f"constant({len(step[1].vertices)}v)")
            else:
                parts.append(f"joinWith({len(step[1].vertices)}v)")
        return "+".join(parts)


class CosimplicialSS:
    def __init__(self, cobound: int, levels: list, maps: dict, label: str = ""):
        """maps: Monotone -> map-like (must include every non-identity
        monotone map within the cobound)."""
        self.cobound = cobound
        self.levels = levels
        self.maps = maps
        self.label = label

    def level(self, p: int):
        if p > self.cobound:
            raise BoundError(f"{self.label}: level {p} > cobound {self.cobound}")
        return self.levels[p]

    def map(self, alpha: Monotone):
        return self.maps[alpha]

    def validate(self) -> None:
        for a in range(self.cobound + 1):
            for b in range(self.cobound + 1):
                for c in range(self.cobound + 1):
                    for f in all_monotone(a, b):
                        for g in all_monotone(b, c):
                            gf = mono_compose(g, f)
                            for cs in self.level(a).cells:
                                for cell in cs:
                                    left = self.maps[g].image(self.maps[f].image(nd(cell)))
                                    right = self.maps[gf].image(nd(cell))
                                    assert left == right, (
                                        f"cosimplicial identity fails for {g.img} o {f.img}"
                                    )


def cosimplicial_from_complexes(
    complexes: list[SimplicialComplex],
    vmap_of: "callable",
    bounds: list[int],
    label: str = "",
) -> CosimplicialSS:
    """Levels converted from complexes; the structure map of alpha comes from
    the vertex map vmap_of(alpha, p, q)."""
    cobound = len(complexes) - 1
    levels = [
        complex_to_sset(complexes[p], bounds[p], label=f"{label}[{p}]")
        for p in range(cobound + 1)
    ]
    pos = [{v: i for i, v in enumerate(complexes[p].vertices)} for p in range(cobound + 1)]
    maps = {}
    for a in range(cobound + 1):
        for b in range(cobound + 1):
            for alpha in all_monotone(a, b):
                if alpha.is_identity():
                    assign = {c: nd(c) for cs in levels[a].cells for c in cs}
                else:
                    assign = vertex_map_sset(
                        levels[a], levels[b], vmap_of(alpha, a, b), pos[b]
                    )
                maps[alpha] = SimplicialMap(levels[a], levels[b], assign, label=f"{alpha.img}")
    return CosimplicialSS(cobound, levels, maps, label=label)


def sk0_delta_complex(p: int) -> SimplicialComplex:
    return discrete_complex(range(p + 1))


def functor_levels_join(f: FSpec, x: SimplicialComplex | None, copies: int,
                        cobound: int, bounds: list[int], label: str) -> CosimplicialSS:
    """The cosimplicial object p -> F((sk_0 Delta^p)^{* copies} * X), with
    cofaces by vertex inclusion and codegeneracies by vertex collapse."""
    parts_of = lambda p: [sk0_delta_complex(p)] * copies + ([x] if x is not None else [])
    complexes = [f.value(join_many(parts_of(p))) for p in range(cobound + 1)]

    def vmap_of(alpha: Monotone, a: int, b: int) -> dict:
        base = {}
        for i in range(copies):
            for v in range(a + 1):
                base[(i, v)] = (i, alpha(v))
        if x is not None:
            for v in x.vertices:
                base[(copies, v)] = (copies, v)
        return f.transport(base)

    return cosimplicial_from_complexes(complexes, vmap_of, bounds, label=label)


def functor_xk(k: int, cobound: int, bounds: list[int]) -> CosimplicialSS:
    """p -> k-skeleton of Delta^p."""
    complexes = [simplex_complex(p).skeleton(k) for p in range(cobound + 1)]

    def vmap_of(alpha, a, b):
        return {v: alpha(v) for v in range(a + 1)}

    return cosimplicial_from_complexes(complexes, vmap_of, bounds, label=f"X_{k}")


def functor_yk(k: int, cobound: int, bounds: list[int]) -> CosimplicialSS:
    """p -> (k+1)-fold join of the vertex set of Delta^p."""
    return functor_levels_join(FSpec.identity(), None, k + 1, cobound, bounds, label=f"Y_{k}")


def functor_sk0_join_power(k: int, x: SimplicialComplex, cobound: int,
                           bounds: list[int]) -> CosimplicialSS:
    """p -> (sk_0 Delta^p)^{*(k+1)} * X."""
    return functor_levels_join(FSpec.identity(), x, k + 1, cobound, bounds,
                               label=f"sk0^{{*{k + 1}}}*X")


def paper_functor(kind: str, *, k: int, cobound: int, bounds: list[int] | int,
                  x: SimplicialComplex | None = None) -> CosimplicialSS:
    """Named level functors: X_k, Y_k, or the join power with a base complex."""
    if isinstance(bounds, int):
        bounds = [bounds] * (cobound + 1)
    if kind == "X_k":
        return functor_xk(k, cobound, bounds)
    if kind == "Y_k":
        return functor_yk(k, cobound, bounds)
    if kind == "sk0_join_power":
        assert x is not None, "sk0_join_power needs a base complex"
        return functor_sk0_join_power(k, x, cobound, bounds)
    raise ValueError(f"unknown functor kind {kind!r}")


def constant_cosimplicial(y: SimplicialSet, cobound: int, label: str = "") -> CosimplicialSS:
    ident = {c: nd(c) for cs in y.cells for c in cs}
    maps = {}
    for a in range(cobound + 1):
        for b in range(cobound + 1):
            for alpha in all_monotone(a, b):
                maps[alpha] = SimplicialMap(y, y, ident, label="id")
    return CosimplicialSS(cobound, [y] * (cobound + 1), maps, label=label or f"const({y.label})")


# -- multicosimplicial objects -------------------------------------------------


class MultiCosimplicialSS:
    def __init__(self, arity: int, cobounds: tuple[int, ...], levels: dict,
                 map_fn, label: str = ""):
        """levels: coords tuple -> simplicial set; map_fn(d, alpha, coords)
        gives the structure map in direction d from level(coords)."""
        self.arity = arity
        self.cobounds = cobounds
        self.levels = levels
        self._map_fn = map_fn
        self.label = label

    def level(self, coords: tuple[int, ...]):
        return self.levels[coords]

    def map(self, d: int, alpha: Monotone, coords: tuple[int, ...]):
        assert coords[d] == alpha.dom
        return self._map_fn(d, alpha, coords)

    def validate_directions_commute(self) -> None:
        assert self.arity == 2, "commutation check implemented for arity 2"
        for coords in self.levels:
            a, b = coords
            for alpha in all_monotone(a, self.cobounds[0]):
                for beta in all_monotone(b, self.cobounds[1]):
                    m1 = self.map(0, alpha, (a, b))
                    m2 = self.map(1, beta, (alpha.cod, b))
                    m3 = self.map(1, beta, (a, b))
                    m4 = self.map(0, alpha, (a, beta.cod))
                    for cs in self.level((a, b)).cells:
                        for cell in cs:
                            assert m2.image(m1.image(nd(cell))) == m4.image(m3.image(nd(cell)))


def multi_join_functor(f: FSpec, x: SimplicialComplex | None, arity: int,
                       cobounds: tuple[int, ...], bound: int, label: str = "") -> MultiCosimplicialSS:
    """(j_1, ..., j_k) -> F(sk_0 Delta^{j_1} * ... * sk_0 Delta^{j_k} * X)."""
    coords_list = list(iproduct(*[range(c + 1) for c in cobounds]))
    complexes = {
        coords: f.value(
            join_many([sk0_delta_complex(j) for j in coords] + ([x] if x is not None else []))
        )
        for coords in coords_list
    }
    levels = {
        coords: complex_to_sset(complexes[coords], bound, label=f"{label}{coords}")
        for coords in coords_list
    }
    pos = {coords: {v: i for i, v in enumerate(complexes[coords].vertices)}
           for coords in coords_list}
    cache: dict = {}

    def map_fn(d, alpha, coords):
        key = (d, alpha, coords)
        if key in cache:
            return cache[key]
        tgt_coords = coords[:d] + (alpha.cod,) + coords[d + 1 :]
        base = {}
        for i, j in enumerate(coords):
            for v in range(j + 1):
                base[(i, v)] = (i, alpha(v)) if i == d else (i, v)
        if x is not None:
            for v in x.vertices:
                base[(arity, v)] = (arity, v)
        assign = vertex_map_sset(levels[coords], levels[tgt_coords],
                                 f.transport(base), pos[tgt_coords])
        m = SimplicialMap(levels[coords], levels[tgt_coords], assign)
        cache[key] = m
        return m

    return MultiCosimplicialSS(arity, cobounds, levels, map_fn, label=label)


def external_product(c1: CosimplicialSS, c2: CosimplicialSS, bound: int,
                     budget: Budget | None = None, label: str = "") -> MultiCosimplicialSS:
    """Bicosimplicial external product: level (a, b) = C1(a) x C2(b)."""
    from .build import product, product_map
    from .maps import identity_map

    budget = budget or Budget(10**9)
    levels = {}
    for a in range(c1.cobound + 1):
        for b in range(c2.cobound + 1):
            levels[(a, b)] = product(c1.level(a), c2.level(b), bound, budget)
    cache: dict = {}

    def map_fn(d, alpha, coords):
        key = (d, alpha, coords)
        if key not in cache:
            a, b = coords
            tgt = (alpha.cod, b) if d == 0 else (a, alpha.cod)
            f1 = c1.map(alpha) if d == 0 else identity_map(c1.level(a))
            f2 = c2.map(alpha) if d == 1 else identity_map(c2.level(b))
            cache[key] = product_map(f1, f2, levels[coords], levels[tgt])
        return cache[key]

    return MultiCosimplicialSS(2, (c1.cobound, c2.cobound), levels, map_fn,
                               label=label or f"{c1.label}(x){c2.label}")


def constant_multi(y: SimplicialSet, arity: int, cobounds: tuple[int, ...],
                   label: str = "") -> MultiCosimplicialSS:
    ident = {c: nd(c) for cs in y.cells for c in cs}
    coords_list = list(iproduct(*[range(c + 1) for c in cobounds]))
    levels = {coords: y for coords in coords_list}
    m = SimplicialMap(y, y, ident, label="id")

    def map_fn(d, alpha, coords):
        return m

    return MultiCosimplicialSS(arity, cobounds, levels, map_fn,
                               label=label or f"const({y.label})")


def diagonal_multi(m: MultiCosimplicialSS) -> CosimplicialSS:
    """diag(M): level j = M(j, ..., j); structure maps are the composites of
    the direction maps."""
    assert m.arity >= 2, "diagonal needs arity >= 2"
    cobound = min(m.cobounds)
    assert all(c == cobound for c in m.cobounds), "diagonal needs equal cobounds"
    levels = [m.level((j,) * m.arity) for j in range(cobound + 1)]
    maps = {}
    for a in range(cobound + 1):
        for b in range(cobound + 1):
            for alpha in all_monotone(a, b):
                coords = [a] * m.arity
                parts = []
                for d in range(m.arity):
                    parts.append(m.map(d, alpha, tuple(coords)))
                    coords[d] = b
                maps[alpha] = _compose_chain(parts)
    return CosimplicialSS(cobound, levels, maps, label=f"diag({m.label})")


def _compose_chain(parts):
    from .maps import compose_maps

    out = parts[0]
    for p in parts[1:]:
        out = compose_maps(p, out)
    return out


# -- coskeleton in the cosimplicial direction ----------------------------------


def cosk_index_maps(m: int, p: int) -> list[Monotone]:
    """All monotone maps [m] -> [a] with a <= p, in (a, image) order."""
    out = []
    for a in range(p + 1):
        out.extend(all_monotone(m, a))
    return out


class CoskCosimplicial(CosimplicialSS):
    """Cosimplicial coskeleton: level m is the strict limit of the levels
    C(a) over all u: [m] -> [a] with a <= p.  Cells are compatible families,
    keyed by tuples over the index maps."""

    def __init__(self, c: CosimplicialSS, p: int, new_cobound: int, bound: int,
                 budget: Budget):
        self.inner = c
        self.p = p
        index = {m: cosk_index_maps(m, p) for m in range(new_cobound + 1)}
        self._index = index
        normals = {}
        levels = []
        for m in range(new_cobound + 1):
            raw = self._build_level(c, m, bound, budget)
            normals[m] = raw.normal
            levels.append(raw.sset)
        self._normals = normals
        maps = {}
        for a in range(new_cobound + 1):
            for b in range(new_cobound + 1):
                for alpha in all_monotone(a, b):
                    maps[alpha] = self._reindex_map(levels, a, b, alpha)
        super().__init__(new_cobound, levels, maps,
                         label=f"cosk_{p}({c.label})")

    def _build_level(self, c, m, bound, budget):
        index = self._index[m]

        def levels_fn(d):
            out = []
            sims = {u: c.level(u.cod).all_simplices(d) for u in index}

            def rec(k, chosen):
                if k == len(index):
                    out.append(tuple(chosen))
                    budget.spend(1, f"cosk level {m}")
                    return
                u = index[k]
                cands = sims[u]
                # pin/filter against earlier components
                for j in range(k):
                    w = index[j]
                    # v . w == u pins; v . u == w filters
                    for a2 in range(self.p + 1):
                        for v in all_monotone(w.cod, a2):
                            if mono_compose(v, w) == u:
                                forced = c.map(v).image(chosen[j])
                                cands = [s for s in cands if s == forced]
                    if not cands:
                        break
                filtered = []
                for s in cands:
                    ok = True
                    for j in range(k):
                        w = index[j]
                        for v in all_monotone(u.cod, w.cod):
                            if mono_compose(v, u) == w and c.map(v).image(s) != chosen[j]:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        filtered.append(s)
                for s in filtered:
                    chosen.append(s)
                    rec(k + 1, chosen)
                    chosen.pop()

            rec(0, [])
            return out

        def face(d, i, key):
            return tuple(c.level(u.cod).face_simplex(s, i) for u, s in zip(index, key))

        def degen(d, i, key):
            return tuple(c.level(u.cod).degenerate((i,), s) for u, s in zip(index, key))

        return sset_from_raw(bound, levels_fn, face, degen,
                             label=f"cosk_{self.p}({c.label})[{m}]")

    def _reindex_map(self, levels, a, b, alpha):
        src_index = self._index[a]
        tgt_index = self._index[b]
        pos = {u: k for k, u in enumerate(src_index)}
        assignment = {}
        for cs in levels[a].cells:
            for cell in cs:
                key = tuple(cell[pos[mono_compose(u, alpha)]] for u in tgt_index)
                assignment[cell] = self._normals[b][key]
        return SimplicialMap(levels[a], levels[b], assignment, label=f"cosk{alpha.img}")


def cosk_cosimplicial(c: CosimplicialSS, p: int, new_cobound: int, bound: int,
                      budget: Budget) -> CosimplicialSS:
    if p >= new_cobound and p >= c.cobound:
        return c
    return CoskCosimplicial(c, p, new_cobound, bound, budget)
