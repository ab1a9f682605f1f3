"""Homotopy limits as strict ends with contractible weights.

An end cell of degree n is a family, one per index object i, of simplicial
maps weight(i) x Delta^n -> value(i), compatible with all index morphisms;
it suffices to impose the generating morphisms (poset covers, or elementary
cofaces/codegeneracies).  Weights are the nerve of the part of the poset
under the object for poset-shaped limits, and the standard simplices for
truncated totalizations.  Values may be lazy Ex wrappers for the fibrancy
replacement at a chosen depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .build import CylinderFamily, ProductSSet, _cell_order
from .cat import DiagramSpec, FiniteCategory, FunctorBetween, Morphism, power_poset, product_poset
from .cosimplicial import (
    CosimplicialSS,
    FSpec,
    MultiCosimplicialSS,
    cosk_cosimplicial,
    diagonal_multi,
    functor_levels_join,
    multi_join_functor,
)
from .errors import BoundError, CapExceeded
from .ex import ExTarget, ex_target, materialize, ex_map
from .maps import Budget, SimplicialMap, enumerate_maps, sset_from_raw
from .ops import Monotone, codegeneracy, coface
from .sset import (
    Cell,
    Simplex,
    SimplicialComplex,
    SimplicialSet,
    complex_from_facets,
    complex_to_sset,
    join_complexes,
    join_many,
    nd,
    standard_simplex,
    vertex_map_sset,
)


@dataclass
class EndData:
    """A computed end: the simplicial set plus enough bookkeeping to induce
    maps (restriction along subdiagrams, postcomposition by value maps)."""

    sset: SimplicialSet
    objects: list
    weights: dict
    values: dict
    cyls: dict
    normal: dict
    label: str

    def family(self, cell):
        """The per-object assignment tuples of a nondegenerate end cell."""
        return dict(zip(self.objects, cell))


def end_over(
    objects: list,
    morphisms: list[tuple],
    weights: dict,
    wmaps: dict,
    values: dict,
    vmaps: dict,
    bound: int,
    budget: Budget,
    label: str = "end",
) -> EndData:
    """morphisms: (src, tgt, key) generating morphisms, identities excluded;
    wmaps[key]: SimplicialMap weight(src) -> weight(tgt); vmaps[key]: map-like
    value(src) -> value(tgt)."""
    cyls = {i: CylinderFamily(weights[i], budget) for i in objects}
    pos = {o: k for k, o in enumerate(objects)}
    # morphisms whose source precedes the target become pins on the target's
    # assignment; morphisms running backwards in the order become filters
    into: dict = {o: [] for o in objects}
    back_on: dict = {o: [] for o in objects}
    for (src, tgt, key) in morphisms:
        if pos[src] < pos[tgt]:
            into[tgt].append((src, key))
        else:
            back_on[src].append((tgt, key))

    def compatible_families(n: int) -> list[tuple]:
        families: list[tuple] = []
        partial: dict = {}

        def image_in(obj, simplex_pair_cell):
            # value of the partial family on a (possibly degenerate) product simplex
            w, cell = simplex_pair_cell.word, simplex_pair_cell.cell
            return values[obj].degenerate(w, partial[obj][cell])

        def rec(k: int):
            if k == len(objects):
                families.append(tuple(
                    tuple(partial[o][c] for c in cyls[o].order(n)) for o in objects
                ))
                return
            j = objects[k]
            pj = cyls[j].prod(n)
            pins: dict = {}
            ok = True
            for (i, key) in into[j]:
                pi = cyls[i].prod(n)
                wm = wmaps[key]
                vm = vmaps[key]
                for c in _cell_order(pi):
                    sa, sb = c
                    lhs = vm.image(image_in(i, nd(c)))
                    im = pj.pair_simplex(wm.image(sa), sb)
                    want = values[j].word_section(im.word, lhs)
                    if want is None:
                        ok = False
                        break
                    prev = pins.get(im.cell)
                    if prev is not None and prev != want:
                        ok = False
                        break
                    pins[im.cell] = want
                if not ok:
                    break
            if not ok:
                return
            filters: dict = {}
            for (tgt, key) in back_on[j]:
                pt = cyls[tgt].prod(n)
                wm = wmaps[key]
                vm = vmaps[key]
                for c in _cell_order(pj):
                    sa, sb = c
                    im = pt.pair_simplex(wm.image(sa), sb)
                    rhs = values[tgt].degenerate(im.word, partial[tgt][im.cell])
                    filters.setdefault(c, []).append(
                        lambda s, vm=vm, rhs=rhs: vm.image(s) == rhs
                    )
            for m in enumerate_maps(pj, values[j], budget, pins=pins,
                                    cell_filters=filters,
                                    context=f"{label} object {j!r} degree {n}"):
                partial[j] = m
                rec(k + 1)
                del partial[j]

        rec(0)
        return families

    def levels(n):
        return compatible_families(n)

    def face(n, i, key):
        return tuple(
            cyls[o].restrict(coface(n, i), comp, values[o])
            for o, comp in zip(objects, key)
        )

    def degen(n, i, key):
        return tuple(
            cyls[o].restrict(codegeneracy(n, i), comp, values[o])
            for o, comp in zip(objects, key)
        )

    raw = sset_from_raw(bound, levels, face, degen, label=label)
    return EndData(raw.sset, objects, weights, values, cyls, raw.normal, label)


def end_restriction(big: EndData, small: EndData) -> SimplicialMap:
    """Restriction along a subdiagram with identical weights and values on
    the shared objects (the tower maps)."""
    pos = {o: k for k, o in enumerate(big.objects)}
    assignment = {}
    for cs in big.sset.cells:
        for cell in cs:
            key = tuple(cell[pos[o]] for o in small.objects)
            assignment[cell] = small.normal[key]
    return SimplicialMap(big.sset, small.sset, assignment, label="restrict")


def end_postcompose(src: EndData, tgt: EndData, comp: dict) -> SimplicialMap:
    """Map of ends induced by levelwise maps comp[obj]: value(obj) -> value'."""
    assignment = {}
    for cs in src.sset.cells:
        for cell in cs:
            key = tuple(
                tuple(comp[o].image(v) for v in part)
                for o, part in zip(src.objects, cell)
            )
            assignment[cell] = tgt.normal[key]
    return SimplicialMap(src.sset, tgt.sset, assignment, label="postcompose")


# -- poset-shaped homotopy limits ----------------------------------------------


def poset_covers(p: FiniteCategory) -> list[tuple]:
    """Hasse covering relations of a poset category."""
    covers = []
    for f in p.morphisms:
        if f.src == f.tgt:
            continue
        between = [
            o for o in p.objects
            if o not in (f.src, f.tgt) and p.hom(f.src, o) and p.hom(o, f.tgt)
        ]
        if not between:
            covers.append((f.src, f.tgt, f))
    return covers


def down_complex(p: FiniteCategory, u) -> SimplicialComplex:
    """Order complex of the part of the poset under u (its over-category)."""
    down = [o for o in p.objects if p.hom(o, u)]
    downset = set(down)
    facets = []

    def extend(chain):
        grew = False
        for f in p.out_of(chain[-1]):
            if f.tgt != chain[-1] and f.tgt in downset:
                extend(chain + [f.tgt])
                grew = True
        if not grew:
            facets.append(list(chain))

    for o in down:
        extend([o])
    return complex_from_facets(down, facets)


def holim_poset(diagram: DiagramSpec, bound: int, budget: Budget,
                label: str = "holim") -> EndData:
    """End with weights the nerves of the under-parts of the poset.

    Objects are processed bottom-up along a linear extension: minimal objects
    carry point-like weights (small free choices), and every later object is
    pinned on the image of the earlier weights, leaving only interior cells
    free."""
    p = diagram.index
    assert p.poset, "holim_poset needs a poset index"
    objects = list(p.objects)
    weights = {}
    for u in objects:
        k = down_complex(p, u)
        weights[u] = complex_to_sset(k, max(k.dim(), 0), label=f"W({u!r})")
    wmaps = {}
    vmaps = {}
    morphisms = []
    for (src, tgt, f) in poset_covers(p):
        assignment = {c: nd(c) for cs in weights[src].cells for c in cs}
        wmaps[f] = SimplicialMap(weights[src], weights[tgt], assignment, label="incl")
        vmaps[f] = diagram.maps[f]
        morphisms.append((src, tgt, f))
    return end_over(objects, morphisms, weights, wmaps,
                    {o: diagram.values[o] for o in objects}, vmaps,
                    bound, budget, label=label)


# -- truncated totalization ------------------------------------------------------


def tot_end(c: CosimplicialSS, s: int, bound: int, budget: Budget,
            label: str = "") -> EndData:
    """End over Delta<=s with weights the standard simplices.

    Levels are processed bottom-up: the cofaces pin every vertex column of
    the higher cylinders, and the codegeneracy compatibilities act as
    cellwise filters that cut the interior choices down hard."""
    if c.cobound < s:
        raise BoundError(f"tot truncation {s} exceeds cobound {c.cobound}")
    objects = list(range(s + 1))
    weights = {m: standard_simplex(m, m) for m in objects}
    pos = {m: {v: v for v in range(m + 1)} for m in objects}
    morphisms = []
    wmaps = {}
    vmaps = {}

    def weight_map(alpha: Monotone) -> SimplicialMap:
        assignment = vertex_map_sset(
            weights[alpha.dom], weights[alpha.cod],
            {v: alpha(v) for v in range(alpha.dom + 1)},
            {v: v for v in range(alpha.cod + 1)},
        )
        return SimplicialMap(weights[alpha.dom], weights[alpha.cod], assignment)

    for b in range(1, s + 1):
        for i in range(b + 1):
            alpha = coface(b, i)
            key = ("d", b, i)
            morphisms.append((b - 1, b, key))
            wmaps[key] = weight_map(alpha)
            vmaps[key] = c.map(alpha)
    for b in range(0, s):
        for i in range(b + 1):
            alpha = codegeneracy(b, i)
            key = ("s", b, i)
            morphisms.append((b + 1, b, key))
            wmaps[key] = weight_map(alpha)
            vmaps[key] = c.map(alpha)
    return end_over(objects, morphisms, weights, wmaps,
                    {m: c.level(m) for m in objects}, vmaps,
                    bound, budget, label=label or f"Tot_{s}({c.label})")


def tot(c: CosimplicialSS, s: int, bound: int, budget: Budget | None = None) -> SimplicialSet:
    return tot_end(c, s, bound, budget or Budget(10**9)).sset


# -- Ex replacement of diagrams and cosimplicial objects -------------------------


class ExMapLazy:
    """A map of lazy Ex targets, applied componentwise to value tuples."""

    def __init__(self, inner, label: str = ""):
        self.inner = inner
        self.label = label

    def image(self, s):
        n, values = s
        return (n, tuple(self.inner.image(v) for v in values))


def ex_wrap_cosimplicial(c: CosimplicialSS, depth: int, budget: Budget) -> CosimplicialSS:
    if depth == 0:
        return c
    levels = [ex_target(lv, depth, budget) for lv in c.levels]
    maps = {}
    for alpha, m in c.maps.items():
        out = m
        for _ in range(depth):
            out = ExMapLazy(out)
        maps[alpha] = out
    return CosimplicialSS(c.cobound, levels, maps, label=f"Ex^{depth}({c.label})")


def ex_wrap_diagram(d: DiagramSpec, depth: int, budget: Budget) -> DiagramSpec:
    if depth == 0:
        return d
    values = {o: ex_target(v, depth, budget) for o, v in d.values.items()}
    maps = {}
    for f, m in d.maps.items():
        out = m
        for _ in range(depth):
            out = ExMapLazy(out)
        maps[f] = out
    return DiagramSpec(d.index, values, maps)


# -- diagrams U -> F(U * X) ------------------------------------------------------


def diagram_from_join(f: FSpec, x: SimplicialComplex, index: FiniteCategory,
                      bound_of, label: str = "") -> DiagramSpec:
    """Over a punctured power poset: U -> F(U * X), morphisms induced by
    inclusions.  bound_of(obj) gives the simplicial bound per value."""
    values = {}
    complexes = {}
    for u in index.objects:
        parts = [u] if isinstance(u, tuple) else [u]
        factors = [sk0_of_set(s) for s in parts]
        k = f.value(join_many(factors + [x]))
        complexes[u] = k
        values[u] = complex_to_sset(k, bound_of(u), label=f"F({u!r}*X)")
    maps = {}
    pos = {u: {v: i for i, v in enumerate(complexes[u].vertices)} for u in index.objects}
    for m in index.morphisms:
        src, tgt = m.src, m.tgt
        sparts = [src] if isinstance(src, tuple) else [src]
        tparts = [tgt] if isinstance(tgt, tuple) else [tgt]
        base = {}
        for i, (su, tu) in enumerate(zip(sparts, tparts)):
            for v in sorted(su):
                base[(i, v)] = (i, v)
        nfac = len(sparts)
        for v in x.vertices:
            base[(nfac, v)] = (nfac, v)
        vmap = f.transport(base)
        assignment = vertex_map_sset(values[src], values[tgt], vmap, pos[tgt])
        maps[m] = SimplicialMap(values[src], values[tgt], assignment)
    return DiagramSpec(index, values, maps)


def sk0_of_set(u) -> SimplicialComplex:
    from .sset import discrete_complex

    return discrete_complex(sorted(u))


# -- the two models of T_n -------------------------------------------------------


def t_n(f: FSpec, x: SimplicialComplex, n: int, model: str, bound: int,
        ex_depth: int, budget: Budget) -> EndData:
    """Degree-n approximation: homotopy limit of U -> F(U*X), either over the
    punctured power-set poset or as a truncated totalization."""
    assert model in ("poset", "cosimplicial")
    if model == "poset":
        p = power_poset(n, punctured=True)
        bound_of = lambda u: len(u) - 1 + bound
        d = diagram_from_join(f, x, p, bound_of, label=f"T_{n}")
        d = ex_wrap_diagram(d, ex_depth, budget)
        return holim_poset(d, bound, budget, label=f"T_{n}^poset")
    c = functor_levels_join(f, x, 1, n, [m + bound for m in range(n + 1)],
                            label="F(sk0*X)")
    c = ex_wrap_cosimplicial(c, ex_depth, budget)
    return tot_end(c, n, bound, budget, label=f"T_{n}^cosimp")


# -- multicosimplicial machinery for iterates ------------------------------------


def ex_materialize_multi(m: MultiCosimplicialSS, depth: int, bound: int,
                         budget: Budget) -> MultiCosimplicialSS:
    """Levelwise materialized Ex of a multicosimplicial object."""
    if depth == 0:
        return m
    raws = {}
    levels = {}
    for coords, lv in m.levels.items():
        raw = None
        cur = lv
        for _ in range(depth):
            raw = materialize(ExTarget(cur, budget), bound, budget)
            cur = raw.sset
        raws[coords] = raw
        levels[coords] = cur
    cache: dict = {}

    def map_fn(d, alpha, coords):
        key = (d, alpha, coords)
        if key not in cache:
            tgt_coords = coords[:d] + (alpha.cod,) + coords[d + 1 :]
            inner = m.map(d, alpha, coords)
            if depth == 1:
                cache[key] = ex_map(inner, raws[coords], raws[tgt_coords], bound)
            else:
                cur = inner
                # rebuild the chain of materializations in step
                src_cur, tgt_cur = m.levels[coords], m.levels[tgt_coords]
                for _ in range(depth):
                    src_raw = materialize(ExTarget(src_cur, budget), bound, budget)
                    tgt_raw = materialize(ExTarget(tgt_cur, budget), bound, budget)
                    cur = ex_map(cur, src_raw, tgt_raw, bound)
                    src_cur, tgt_cur = src_raw.sset, tgt_raw.sset
                cache[key] = cur
        return cache[key]

    return MultiCosimplicialSS(m.arity, m.cobounds, levels, map_fn,
                               label=f"Ex^{depth}({m.label})")


def cosk_multi_direction(m: MultiCosimplicialSS, d: int, p: int, new_cobound: int,
                         bound: int, budget: Budget) -> MultiCosimplicialSS:
    """Coskeleton in one cosimplicial direction of a bicosimplicial object."""
    assert m.arity == 2, "implemented for arity 2"
    other = 1 - d
    from .cosimplicial import CoskCosimplicial
    from .ops import all_monotone

    slices = {}
    for j in range(m.cobounds[other] + 1):
        def mk(j):
            lv = [m.level((a, j) if d == 0 else (j, a)) for a in range(m.cobounds[d] + 1)]
            maps = {}
            for a in range(m.cobounds[d] + 1):
                for b in range(m.cobounds[d] + 1):
                    for alpha in all_monotone(a, b):
                        coords = (a, j) if d == 0 else (j, a)
                        maps[alpha] = m.map(d, alpha, coords)
            return CosimplicialSS(m.cobounds[d], lv, maps, label=f"{m.label}|{j}")
        sl = mk(j)
        ck = cosk_cosimplicial(sl, p, new_cobound, bound, budget)
        slices[j] = ck
    new_cobounds = (new_cobound, m.cobounds[other]) if d == 0 else (m.cobounds[other], new_cobound)
    levels = {}
    for j, ck in slices.items():
        for a in range(new_cobound + 1):
            coords = (a, j) if d == 0 else (j, a)
            levels[coords] = ck.level(a)
    cache: dict = {}

    def map_fn(dd, alpha, coords):
        key = (dd, alpha, coords)
        if key in cache:
            return cache[key]
        a, b = coords
        if dd == d:
            j = coords[other]
            out = slices[j].maps[alpha]
        else:
            # cross map between cosk'd slices, componentwise in the family
            lvl = coords[d]
            j_src = coords[other]
            ck_src, ck_tgt = slices[j_src], slices[alpha.cod]
            if isinstance(ck_src, CoskCosimplicial):
                index = ck_src._index[lvl]
                src_sset = ck_src.level(lvl)
                assignment = {}
                for cs in src_sset.cells:
                    for cell in cs:
                        comps = []
                        for u, s in zip(index, cell):
                            mcoords = (u.cod, j_src) if d == 0 else (j_src, u.cod)
                            comps.append(m.map(other, alpha, mcoords).image(s))
                        assignment[cell] = ck_tgt._normals[lvl][tuple(comps)]
                out = SimplicialMap(src_sset, ck_tgt.level(lvl), assignment)
            else:
                # no coskeletonization actually happened; delegate
                mcoords = (lvl, j_src) if d == 0 else (j_src, lvl)
                out = m.map(other, alpha, mcoords)
        cache[key] = out
        return out

    return MultiCosimplicialSS(2, new_cobounds, levels, map_fn,
                               label=f"cosk_{p}^{d}({m.label})")


def tot_in_direction(m: MultiCosimplicialSS, d: int, s: int, inner_bound: int,
                     budget: Budget) -> CosimplicialSS:
    """Totalize one direction of a bicosimplicial object, keeping the other."""
    assert m.arity == 2
    other = 1 - d
    from .ops import all_monotone

    ends = {}
    for j in range(m.cobounds[other] + 1):
        lv = [m.level((a, j) if d == 0 else (j, a)) for a in range(m.cobounds[d] + 1)]
        maps = {}
        for a in range(m.cobounds[d] + 1):
            for b in range(m.cobounds[d] + 1):
                for alpha in all_monotone(a, b):
                    coords = (a, j) if d == 0 else (j, a)
                    maps[alpha] = m.map(d, alpha, coords)
        sl = CosimplicialSS(m.cobounds[d], lv, maps, label=f"{m.label}|{j}")
        ends[j] = tot_end(sl, s, inner_bound, budget, label=f"Tot^{d}|{j}")
    maps_out = {}
    for a in range(m.cobounds[other] + 1):
        for b in range(m.cobounds[other] + 1):
            for alpha in all_monotone(a, b):
                comp = {}
                for lvl in range(s + 1):
                    coords = (lvl, a) if d == 0 else (a, lvl)
                    comp[lvl] = m.map(other, alpha, coords)
                maps_out[alpha] = end_postcompose(ends[a], ends[alpha.cod], comp)
    return CosimplicialSS(m.cobounds[other], [ends[j].sset for j in range(m.cobounds[other] + 1)],
                          maps_out, label=f"Tot^{d}_{s}({m.label})")


# -- iterates ---------------------------------------------------------------------


def t_n_k_model(f: FSpec, x: SimplicialComplex, n: int, k: int, bound: int,
                ex_depth: int, budget: Budget) -> EndData:
    """The diag(cosk) model: k-fold join levels, coskeleton at n in every
    direction through cobound n*k, diagonal, then Tot_{n*k}."""
    assert n >= 1 and k >= 1
    if k == 1:
        return t_n(f, x, n, "cosimplicial", bound, ex_depth, budget)
    assert k == 2, "diag/cosk model implemented for k <= 2"
    level_bound = n * k + bound
    m = multi_join_functor(f, x, k, (n,) * k, level_bound, label="F(sk0*sk0*X)")
    m = ex_materialize_multi(m, ex_depth, level_bound, budget)
    m = cosk_multi_direction(m, 0, n, n * k, level_bound, budget)
    m = cosk_multi_direction(m, 1, n, n * k, level_bound, budget)
    diag = diagonal_multi(m)
    return tot_end(diag, n * k, bound, budget, label=f"T_{n}^{k} diag/cosk")


def t_n_k_iterated(f: FSpec, x: SimplicialComplex, n: int, k: int, bound: int,
                   ex_depth: int, budget: Budget) -> EndData:
    """The iterated model: apply the cosimplicial T_n construction k times."""
    assert n >= 1 and k >= 1
    if k == 1:
        return t_n(f, x, n, "cosimplicial", bound, ex_depth, budget)
    assert k == 2, "iterated model implemented for k <= 2"
    inner_bound = n + bound
    m = multi_join_functor(f, x, k, (n,) * k, n + inner_bound, label="F(sk0*sk0*X)")
    m = ex_materialize_multi(m, ex_depth, n + inner_bound, budget)
    inner = tot_in_direction(m, 0, n, inner_bound, budget)
    return tot_end(inner, n, bound, budget, label=f"T_{n}^{k} iterated")


# -- towers -----------------------------------------------------------------------


@dataclass
class TowerStage:
    n: int
    end: EndData
    homology: list  # (degree, betti, torsion)
    capped: bool = False


@dataclass
class TowerReport:
    f_label: str
    x_label: str
    k: int
    bound: int
    ex_depth: int
    stages: list
    maps: list  # (n_from, n_to, per-degree free-part matrices, composes_ok)

    def to_json(self) -> dict:
        return {
            "functor": self.f_label,
            "input": self.x_label,
            "row": self.k,
            "bound": self.bound,
            "ex_depth": self.ex_depth,
            "stages": [
                {
                    "n": s.n,
                    "capped": s.capped,
                    "homology": [
                        {"degree": d, "betti": b, "torsion": t} for d, b, t in s.homology
                    ],
                }
                for s in self.stages
            ],
            "maps": [
                {
                    "from": a,
                    "to": b,
                    "matrices": {str(d): m for d, m in mats.items()},
                }
                for (a, b, mats) in self.maps
            ],
        }


def t_n_poset_iterate(f: FSpec, x: SimplicialComplex, n: int, i: int, bound: int,
                      ex_depth: int, budget: Budget) -> EndData:
    """The i-fold iterate over the product poset P0([n])^i, as the homotopy
    limit of (U_1, ..., U_i) -> F(U_1 * ... * U_i * X)."""
    base = power_poset(n, punctured=True)
    p = base if i == 1 else product_poset([base] * i)

    def bound_of(u):
        parts = u if (i > 1) else (u,)
        w_dim = sum(len(s) - 1 for s in parts) + (i - 1 if False else 0)
        return sum(len(s) - 1 for s in parts) + bound

    def as_parts(u):
        return list(u) if i > 1 else [u]

    values = {}
    complexes = {}
    for u in p.objects:
        k = f.value(join_many([sk0_of_set(s) for s in as_parts(u)] + [x]))
        complexes[u] = k
        values[u] = complex_to_sset(k, bound_of(u), label=f"F({u!r}*X)")
    maps = {}
    pos = {u: {v: j for j, v in enumerate(complexes[u].vertices)} for u in p.objects}
    for m in p.morphisms:
        sparts, tparts = as_parts(m.src), as_parts(m.tgt)
        basemap = {}
        for idx, (su, tu) in enumerate(zip(sparts, tparts)):
            for v in sorted(su):
                basemap[(idx, v)] = (idx, v)
        for v in x.vertices:
            basemap[(len(sparts), v)] = (len(tparts), v)
        vmap = f.transport(basemap)
        assignment = vertex_map_sset(values[m.src], values[m.tgt], vmap, pos[m.tgt])
        maps[m] = SimplicialMap(values[m.src], values[m.tgt], assignment)
    d = DiagramSpec(p, values, maps)
    d = ex_wrap_diagram(d, ex_depth, budget)
    return holim_poset(d, bound, budget, label=f"T_{n}^{i}")


def tower_report(f: FSpec, x: SimplicialComplex, k: int, n_range: range, bound: int,
                 ex_depth: int, budget: Budget) -> TowerReport:
    """Row k of the tower grid: stages are the (k+1)-fold iterates for n in
    n_range, with the restriction maps along the poset inclusions and their
    induced matrices on the free part of homology."""
    from .homology import homology, homology_map

    stages: list[TowerStage] = []
    for n in sorted(n_range, reverse=True):
        try:
            e = t_n_poset_iterate(f, x, n, k + 1, bound + 1, ex_depth, budget)
            h = homology(e.sset, bound).rows
            stages.append(TowerStage(n, e, h))
        except CapExceeded:
            stages.append(TowerStage(n, None, [], capped=True))
    stages.sort(key=lambda s: -s.n)
    maps = []
    for hi, lo in zip(stages, stages[1:]):
        if hi.end is None or lo.end is None:
            continue
        rmap = end_restriction(hi.end, lo.end)
        mats = {}
        for d in range(bound + 1):
            mats[d] = homology_map(rmap, d)
        maps.append((hi.n, lo.n, mats))
    return TowerReport(f.describe(), x_label(x), k, bound, ex_depth, stages, maps)


def x_label(x: SimplicialComplex) -> str:
    return f"complex({len(x.vertices)}v,f={x.f_vector()})"


# -- the bicosimplicial interchange check -------------------------------------------


@dataclass
class InterchangeReport:
    p: int
    q: int
    bound: int
    left: list
    right: list
    agree: bool
    capped: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "bound": self.bound,
            "left": [{"degree": d, "betti": b, "torsion": t} for d, b, t in self.left],
            "right": [{"degree": d, "betti": b, "torsion": t} for d, b, t in self.right],
            "agree": self.agree,
            "capped": self.capped,
        }


def partial_holim_check(b: MultiCosimplicialSS, p: int, q: int, bound: int,
                        budget: Budget) -> InterchangeReport:
    """Compare Tot_p in direction 1 of Tot_q in direction 2 against
    Tot_{p+q} of the diagonal of the direction-wise coskeleton."""
    from .homology import homology

    assert b.arity == 2
    inner = tot_in_direction(b, 1, q, p + bound + 1, budget)
    left_end = tot_end(inner, p, bound + 1, budget, label="Tot^1Tot^2")
    left = homology(left_end.sset, bound).rows
    ck = cosk_multi_direction(b, 0, p, p + q, p + q + bound + 1, budget)
    ck = cosk_multi_direction(ck, 1, q, p + q, p + q + bound + 1, budget)
    diag = diagonal_multi(ck) if p + q >= 1 else None
    if diag is None:
        # p = q = 0: the diagonal truncation is the (0,0) mapping object
        from .cosimplicial import CosimplicialSS as _C

        diag = _C(0, [ck.level((0, 0))], {}, label="diag")
        right_end = tot_end(diag, 0, bound + 1, budget, label="Tot diag")
    else:
        right_end = tot_end(diag, p + q, bound + 1, budget, label="Tot diag cosk")
    right = homology(right_end.sset, bound).rows
    return InterchangeReport(p, q, bound, left, right, left == right)
