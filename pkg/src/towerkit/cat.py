"""Finite categories, functors, nerves, comma categories, cofinality reports.

Categories are stored with explicit object and morphism lists; composition
is either a stored table or a closed-form rule.  Validation (associativity,
unitality, functoriality) is exhaustive but only invoked on request, since
comma categories can reach a few thousand morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BoundError
from .maps import sset_from_raw
from .ops import Monotone, all_monotone, compose as mono_compose, identity as mono_identity
from .sset import SimplicialComplex, SimplicialSet, complex_from_facets


@dataclass(frozen=True)
class Morphism:
    src: object
    tgt: object
    name: object


class FiniteCategory:
    def __init__(self, objects, morphisms: list[Morphism], identities, poset: bool,
                 compose_fn=None, label: str = ""):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.identities = identities
        self.poset = poset
        self._compose_fn = compose_fn
        self.label = label
        self._hom: dict[tuple, list[Morphism]] | None = None
        self._out: dict[object, list[Morphism]] | None = None

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        assert f.tgt == g.src, "not composable"
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        return self._compose_fn(g, f)

    def is_identity(self, f: Morphism) -> bool:
        return self.identities.get(f.src) == f

    def hom(self, a, b) -> list[Morphism]:
        if self._hom is None:
            self._hom = {}
            for f in self.morphisms:
                self._hom.setdefault((f.src, f.tgt), []).append(f)
        return self._hom.get((a, b), [])

    def out_of(self, a) -> list[Morphism]:
        if self._out is None:
            self._out = {}
            for f in self.morphisms:
                self._out.setdefault(f.src, []).append(f)
        return self._out.get(a, [])

    def validate(self) -> None:
        for f in self.morphisms:
            assert f.src in self.objects and f.tgt in self.objects
            assert self.compose(self.identities[f.tgt], f) == f
            assert self.compose(f, self.identities[f.src]) == f
        for g in self.morphisms:
            for f in self.morphisms:
                if f.tgt != g.src:
                    continue
                gf = self.compose(g, f)
                assert gf in set(self.hom(f.src, g.tgt)), "composite not in category"
                for h in self.morphisms:
                    if g.tgt != h.src:
                        continue
                    assert self.compose(h, self.compose(g, f)) == self.compose(
                        self.compose(h, g), f
                    ), "associativity fails"
        if self.poset:
            for a in self.objects:
                for b in self.objects:
                    assert len(self.hom(a, b)) <= 1, "poset flag but parallel morphisms"
            for f in self.morphisms:
                if f.src == f.tgt:
                    assert self.is_identity(f), "poset flag but nonidentity endomorphism"

    def longest_chain(self) -> int:
        """Longest string of composable nonidentity morphisms (the category
        must be acyclic for this to be finite)."""
        memo: dict = {}

        def depth(o, stack):
            if o in memo:
                return memo[o]
            assert o not in stack, "category has a cycle of nonidentity morphisms"
            best = 0
            for f in self.out_of(o):
                if not self.is_identity(f):
                    best = max(best, 1 + depth(f.tgt, stack | {o}))
            memo[o] = best
            return best

        return max((depth(o, frozenset()) for o in self.objects), default=0)

    def has_terminal(self):
        for t in self.objects:
            if all(len(self.hom(a, t)) == 1 for a in self.objects):
                return t
        return None

    def has_initial(self):
        for s in self.objects:
            if all(len(self.hom(s, a)) == 1 for a in self.objects):
                return s
        return None

    def to_json(self) -> dict:
        oid = {o: k for k, o in enumerate(self.objects)}
        mid = {m: k for k, m in enumerate(self.morphisms)}
        comp = [
            [mid[g], mid[f], mid[self.compose(g, f)]]
            for g in self.morphisms
            for f in self.morphisms
            if f.tgt == g.src
        ]
        return {
            "label": self.label,
            "objects": [repr(o) for o in self.objects],
            "morphisms": [
                {"src": oid[m.src], "tgt": oid[m.tgt], "id": self.is_identity(m)}
                for m in self.morphisms
            ],
            "comp": comp,
        }


def category_from_poset(elements, leq, label: str = "") -> FiniteCategory:
    """Poset as a category: one morphism a -> b whenever leq(a, b)."""
    elements = list(elements)
    morphisms = [
        Morphism(a, b, "<=") for a in elements for b in elements if leq(a, b)
    ]
    identities = {a: Morphism(a, a, "<=") for a in elements}
    return FiniteCategory(
        elements, morphisms, identities, poset=True,
        compose_fn=lambda g, f: Morphism(f.src, g.tgt, "<="), label=label,
    )


def power_poset(n: int, punctured: bool = True) -> FiniteCategory:
    """Subsets of {0..n} (nonempty when punctured) ordered by inclusion."""
    objs = []
    for size in range(1 if punctured else 0, n + 2):
        objs.extend(frozenset(c) for c in combinations(range(n + 1), size))
    objs.sort(key=lambda s: (len(s), tuple(sorted(s))))
    label = f"P0([{n}])" if punctured else f"P([{n}])"
    return category_from_poset(objs, lambda a, b: a <= b, label=label)


def product_poset(factors: list[FiniteCategory], label: str = "") -> FiniteCategory:
    """Product of poset categories; objects are tuples."""
    assert all(c.poset for c in factors)
    objs = [()]
    for c in factors:
        objs = [t + (o,) for t in objs for o in c.objects]

    def leq(a, b):
        return all(bool(c.hom(x, y)) for c, x, y in zip(factors, a, b))

    return category_from_poset(objs, leq, label=label or "x".join(c.label for c in factors))


def truncated_simplex_category(n: int) -> FiniteCategory:
    """Objects [0..n], morphisms all monotone maps, composition of functions."""
    objects = list(range(n + 1))
    morphisms = [
        Morphism(a, b, alpha)
        for a in objects
        for b in objects
        for alpha in all_monotone(a, b)
    ]
    identities = {a: Morphism(a, a, mono_identity(a)) for a in objects}
    return FiniteCategory(
        objects, morphisms, identities, poset=False,
        compose_fn=lambda g, f: Morphism(f.src, g.tgt, mono_compose(g.name, f.name)),
        label=f"Delta<={n}",
    )


@dataclass
class FunctorBetween:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: dict
    mor_map: dict
    label: str = ""

    def apply(self, f: Morphism) -> Morphism:
        return self.mor_map[f]

    def validate(self) -> None:
        for o in self.source.objects:
            assert self.obj_map[o] in self.target.objects
            assert self.mor_map[self.source.identities[o]] == self.target.identities[self.obj_map[o]]
        for f in self.source.morphisms:
            mf = self.mor_map[f]
            assert mf.src == self.obj_map[f.src] and mf.tgt == self.obj_map[f.tgt]
        for g in self.source.morphisms:
            for f in self.source.morphisms:
                if f.tgt != g.src:
                    continue
                assert self.mor_map[self.source.compose(g, f)] == self.target.compose(
                    self.mor_map[g], self.mor_map[f]
                ), "functoriality fails"


def inclusion_functor(sub: FiniteCategory, big: FiniteCategory,
                      obj_map=None, label: str = "incl") -> FunctorBetween:
    obj_map = obj_map or {o: o for o in sub.objects}
    mor_map = {}
    for f in sub.morphisms:
        cands = [g for g in big.hom(obj_map[f.src], obj_map[f.tgt]) if g.name == f.name]
        assert len(cands) == 1, f"no unique image for {f}"
        mor_map[f] = cands[0]
    return FunctorBetween(sub, big, obj_map, mor_map, label=label)


def c_functor(n: int) -> FunctorBetween:
    """Send a nonempty subset S of {0..n} to [#S-1]; an inclusion S <= S'
    maps to the monotone injection matching the order isomorphisms of S
    and S' with standard ordinals."""
    src = power_poset(n, punctured=True)
    tgt = truncated_simplex_category(n)
    obj_map = {s: len(s) - 1 for s in src.objects}
    mor_map = {}
    for f in src.morphisms:
        s, t = sorted(f.src), sorted(f.tgt)
        alpha = Monotone(len(t) - 1, tuple(t.index(v) for v in s))
        mor_map[f] = Morphism(len(s) - 1, len(t) - 1, alpha)
    fun = FunctorBetween(src, tgt, obj_map, mor_map, label=f"c_{n}")
    return fun


# -- nerves -------------------------------------------------------------------


def nerve(c: FiniteCategory, bound: int | None = None) -> SimplicialSet:
    """Nerve: degree-n raw simplices are length-n composable strings; the
    normal form discards strings containing identities."""
    if bound is None:
        if any(f.src == f.tgt and not c.is_identity(f) for f in c.morphisms):
            raise BoundError("nerve of a category with nonidentity endomorphisms needs a bound")
        bound = c.longest_chain() + 1

    strings: list[list[tuple]] = [[("o", o) for o in c.objects]]
    prev = [(f,) for f in c.morphisms]
    strings.append([("m", ch) for ch in prev])
    for _ in range(bound - 1):
        prev = [ch + (g,) for ch in prev for g in c.out_of(ch[-1].tgt)]
        strings.append([("m", ch) for ch in prev])

    def levels(n):
        return strings[n]

    def face(n, i, key):
        if n == 1:
            f = key[1][0]
            return ("o", f.tgt if i == 0 else f.src)
        ch = key[1]
        if i == 0:
            return ("m", ch[1:])
        if i == n:
            return ("m", ch[:-1])
        merged = c.compose(ch[i], ch[i - 1])
        return ("m", ch[: i - 1] + (merged,) + ch[i + 1 :])

    def degen(n, i, key):
        if n == 0:
            return ("m", (c.identities[key[1]],))
        ch = key[1]
        if i == 0:
            return ("m", (c.identities[ch[0].src],) + ch)
        return ("m", ch[:i] + (c.identities[ch[i - 1].tgt],) + ch[i:])

    raw = sset_from_raw(bound, levels, face, degen, label=f"N({c.label})")
    return raw.sset


def order_complex(c: FiniteCategory) -> SimplicialComplex:
    """Complex of chains of a poset category (holim weights)."""
    assert c.poset
    facets: list[list] = []

    def extend(chain):
        grew = False
        for f in c.out_of(chain[-1]):
            if f.tgt != chain[-1]:
                extend(chain + [f.tgt])
                grew = True
        if not grew:
            facets.append(list(chain))

    for o in c.objects:
        extend([o])
    return complex_from_facets(list(c.objects), facets)


# -- comma categories ---------------------------------------------------------


def comma(g: FunctorBetween, alpha, side: str = "over") -> FiniteCategory:
    """Objects are pairs (c, f) with f: G(c) -> alpha (over) or
    f: alpha -> G(c) (under); morphisms are source morphisms making the
    triangle commute."""
    assert side in ("over", "under")
    c, d = g.source, g.target
    objs = []
    for o in c.objects:
        homs = d.hom(g.obj_map[o], alpha) if side == "over" else d.hom(alpha, g.obj_map[o])
        for f in homs:
            objs.append((o, f))
    objset = set(objs)
    morphisms = []
    identities = {}
    for (o1, f1) in objs:
        for u in c.out_of(o1):
            gu = g.mor_map[u]
            f2 = None
            if side == "over":
                # f1 = f2 . G(u): search the unique f2 with that property
                for cand in d.hom(g.obj_map[u.tgt], alpha):
                    if d.compose(cand, gu) == f1:
                        if (u.tgt, cand) in objset:
                            m = Morphism((o1, f1), (u.tgt, cand), u)
                            morphisms.append(m)
                            if c.is_identity(u) and cand == f1:
                                identities[(o1, f1)] = m
            else:
                cand = d.compose(gu, f1)
                if (u.tgt, cand) in objset:
                    m = Morphism((o1, f1), (u.tgt, cand), u)
                    morphisms.append(m)
                    if c.is_identity(u) and cand == f1:
                        identities[(o1, f1)] = m

    def compose_fn(m2, m1):
        return Morphism(m1.src, m2.tgt, c.compose(m2.name, m1.name))

    poset = True
    seen = set()
    for m in morphisms:
        key = (m.src, m.tgt)
        if key in seen:
            poset = False
        seen.add(key)
        if m.src == m.tgt and m != identities.get(m.src):
            poset = False
    return FiniteCategory(objs, morphisms, identities, poset=poset,
                          compose_fn=compose_fn,
                          label=f"({g.label} {side} {alpha!r})")


# -- cofinality reports -------------------------------------------------------


@dataclass
class AlphaVerdict:
    alpha: object
    verdict: str  # contractible-certified | homology-trivial-through-bound | obstructed
    detail: str
    homology: list | None = None


@dataclass
class CofinalityReport:
    functor: str
    mode: str
    comma_side: str
    bound: int
    verdicts: list[AlphaVerdict]

    def all_clear(self) -> bool:
        return all(v.verdict != "obstructed" for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "functor": self.functor,
            "mode": self.mode,
            "comma_side": self.comma_side,
            "bound": self.bound,
            "per_alpha": [
                {
                    "alpha": repr(v.alpha),
                    "verdict": v.verdict,
                    "detail": v.detail,
                    "homology": v.homology,
                }
                for v in self.verdicts
            ],
        }


def _homology_verdict(x: SimplicialSet, bound: int, detail: str) -> AlphaVerdict:
    from .homology import homology

    if x.is_empty():
        return AlphaVerdict(None, "obstructed", detail + "; empty (reduced H_-1 nonzero)", [])
    h = homology(x, bound, reduced=True)
    clear = all(b == 0 and not t for _, b, t in h.rows)
    return AlphaVerdict(
        None,
        "homology-trivial-through-bound" if clear else "obstructed",
        detail,
        h.table(),
    )


def cofinality_report(g: FunctorBetween, mode: str, bound: int) -> CofinalityReport:
    """Contractibility evidence for the left-cofinality of a functor, per
    target object.

    comma_nerve mode inspects the nerves of the comma categories (G over
    alpha); delta_shaped requires the source to be a truncated simplex
    category and inspects the simplicial set j -> Mor(G[j], alpha) itself.
    Certificates from terminal/initial objects are preferred to homology.
    """
    assert mode in ("comma_nerve", "delta_shaped")
    verdicts = []
    if mode == "delta_shaped":
        src = g.source
        n = len(src.objects) - 1
        assert src.objects == list(range(n + 1)), "delta_shaped needs source Delta<=n"
        for alpha in g.target.objects:
            verdicts.append(_delta_shaped_verdict(g, alpha, n, bound))
        return CofinalityReport(g.label, mode, "n/a", bound, verdicts)

    for alpha in g.target.objects:
        cm = comma(g, alpha, side="over")
        term = cm.has_terminal()
        init = cm.has_initial()
        if term is not None or init is not None:
            which = "terminal" if term is not None else "initial"
            verdicts.append(
                AlphaVerdict(alpha, "contractible-certified",
                             f"comma category has a {which} object")
            )
            continue
        nv = nerve(cm, bound=bound + 1)
        v = _homology_verdict(nv, bound, f"comma nerve, {len(cm.objects)} objects")
        v.alpha = alpha
        verdicts.append(v)
    return CofinalityReport(g.label, mode, "over", bound, verdicts)


def _delta_shaped_verdict(g: FunctorBetween, alpha, n: int, bound: int) -> AlphaVerdict:
    from .ops import codegeneracy, coface

    def restrict(mono: Monotone, key):
        src_mor = [m for m in g.source.hom(mono.dom, mono.cod) if m.name == mono]
        assert len(src_mor) == 1
        return ("f", g.target.compose(key[1], g.mor_map[src_mor[0]]))

    def levels(j):
        return [("f", f) for f in g.target.hom(g.obj_map[j], alpha)]

    def face(j, i, key):
        return restrict(coface(j, i), key)

    def degen(j, i, key):
        return restrict(codegeneracy(j, i), key)

    raw = sset_from_raw(n, levels, face, degen, label=f"Mor(G-,{alpha!r})")
    x = raw.sset
    if len(x.cells[0]) == 1 and x.dim() == 0:
        return AlphaVerdict(alpha, "contractible-certified", "all Mor-sets are singletons")
    v = _homology_verdict(x, max(0, min(bound, n - 1)), "Mor-set simplicial set")
    v.alpha = alpha
    return v


# -- diagrams of the join form ------------------------------------------------


@dataclass
class DiagramSpec:
    index: FiniteCategory
    values: dict
    maps: dict  # Morphism -> SimplicialMap

    def validate(self) -> None:
        for f in self.index.morphisms:
            m = self.maps[f]
            assert m.source is self.values[f.src] and m.target is self.values[f.tgt]
        for g in self.index.morphisms:
            for f in self.index.morphisms:
                if f.tgt != g.src:
                    continue
                gf = self.index.compose(g, f)
                left = self.maps[gf]
                for cs in self.values[f.src].cells:
                    for cell in cs:
                        got = self.maps[g].image(self.maps[f].assignment[cell])
                        assert got == left.assignment[cell], "diagram not functorial"
