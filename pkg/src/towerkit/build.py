"""Products, coskeleta, mapping spaces, Čech powers, diagonals.

Each construction assembles raw degreewise data (cells with elementary
face/degeneracy operators) and hands it to sset_from_raw for normal-form
extraction, so the degeneracy bookkeeping lives in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundError
from .ops import Monotone, codegeneracy, coface, compose, epi_mono, surjection_of_word, word_of_surjection
from .maps import Budget, RawNormalization, SimplicialMap, enumerate_maps, sset_from_raw
from .sset import (
    Cell,
    Simplex,
    SimplicialComplex,
    SimplicialSet,
    complex_from_facets,
    complex_to_sset,
    nd,
    skeleton,
    standard_simplex,
)

# -- simplices of the standard simplex as monotone maps ----------------------


def delta_simplex_to_mono(s: Simplex, n: int, d: int) -> Monotone:
    """A degree-d simplex of Delta^n, viewed as a monotone map [d] -> [n]."""
    inj = Monotone(n, s.cell)
    return compose(inj, surjection_of_word(s.word, d))


def mono_to_delta_simplex(beta: Monotone) -> Simplex:
    delta, sigma = epi_mono(beta)
    return Simplex(word_of_surjection(sigma), delta.img)


def delta_apply(alpha: Monotone, s: Simplex, n: int, d: int) -> Simplex:
    """Image of a simplex of Delta^n under the map Delta^n -> Delta^cod of alpha."""
    return mono_to_delta_simplex(compose(alpha, delta_simplex_to_mono(s, n, d)))


# -- products -----------------------------------------------------------------


class ProductSSet(SimplicialSet):
    """Degreewise product; cells are jointly nondegenerate pairs of simplices."""

    def __init__(self, a: SimplicialSet, b: SimplicialSet, raw: RawNormalization, bound: int):
        base = raw.sset
        super().__init__(base.cells, base.faces, bound, label=f"({a.label})x({b.label})")
        self.factor_a = a
        self.factor_b = b
        self._raw_normal = raw.normal

    def pair_simplex(self, sa: Simplex, sb: Simplex) -> Simplex:
        """Normal form of the pair (sa, sb) of equal-degree simplices: split
        off the shared degeneracies, leaving a jointly nondegenerate cell."""
        d = self.factor_a.simplex_degree(sa)
        assert self.factor_b.simplex_degree(sb) == d
        shared = tuple(sorted(set(sa.word) & set(sb.word), reverse=True))
        if not shared:
            cell = (sa, sb)
            assert cell in self._deg, f"pair {cell!r} outside product bound"
            return Simplex((), cell)
        sigma_c = surjection_of_word(shared, d)
        section = [sigma_c.img.index(v) for v in range(sigma_c.cod + 1)]

        def residue(s: Simplex) -> Simplex:
            sigma = surjection_of_word(s.word, d)
            img = tuple(sigma.img[j] for j in section)
            return Simplex(word_of_surjection(Monotone(sigma.cod, img)), s.cell)

        cell = (residue(sa), residue(sb))
        assert cell in self._deg, f"pair {cell!r} outside product bound"
        return Simplex(shared, cell)


def product(a: SimplicialSet, b: SimplicialSet, bound: int, budget: Budget | None = None) -> ProductSSet:
    budget = budget or Budget(10**9)

    def levels(n):
        sa = a.all_simplices(n)
        sb = b.all_simplices(n)
        budget.spend(len(sa) * len(sb), f"product({a.label},{b.label}) degree {n}")
        return [(x, y) for x in sa for y in sb]

    def face(n, i, key):
        return (a.face_simplex(key[0], i), b.face_simplex(key[1], i))

    def degen(n, i, key):
        return (a.degenerate((i,), key[0]), b.degenerate((i,), key[1]))

    raw = sset_from_raw(bound, levels, face, degen, label=f"({a.label})x({b.label})")
    return ProductSSet(a, b, raw, bound)


def product_map(f: SimplicialMap, g: SimplicialMap, p: ProductSSet, q: ProductSSet) -> SimplicialMap:
    assignment = {}
    for cs in p.cells:
        for c in cs:
            sa, sb = c
            assignment[c] = q.pair_simplex(f.image(sa), g.image(sb))
    return SimplicialMap(p, q, assignment, label=f"{f.label}x{g.label}")


def diagonal_of_external(a: SimplicialSet, b: SimplicialSet, bound: int,
                         budget: Budget | None = None) -> ProductSSet:
    """Diagonal of the external bisimplicial product A x B: degree-n cells are
    the (n, n) bisimplices, i.e. exactly the degreewise product."""
    return product(a, b, bound, budget)


# -- coskeleta ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _sk_delta(n: int, k: int) -> SimplicialSet:
    return skeleton(standard_simplex(n, n), min(k, n))


def _cell_order(x: SimplicialSet) -> list[Cell]:
    return [c for cs in x.cells for c in cs]


class CoskResult:
    def __init__(self, raw: RawNormalization, x: SimplicialSet, k: int, bound: int):
        self.sset = raw.sset
        self.normal = raw.normal
        self.x = x
        self.k = k
        self.bound = bound

    def unit_image(self, cell: Cell) -> Simplex:
        """Image of a nondegenerate cell of X under X -> cosk_k X."""
        n = self.x.degree(cell)
        key = tuple(
            self.x.apply(Monotone(n, t), nd(cell)) for t in _cell_order(_sk_delta(n, self.k))
        )
        return self.normal[key]


def coskeleton(x: SimplicialSet, k: int, bound: int, budget: Budget | None = None) -> CoskResult:
    """Right adjoint of the k-skeleton: degree-n cells are the simplicial maps
    sk_k Delta^n -> X, with structure maps by precomposition."""
    if x.bound < k:
        raise BoundError(f"coskeleton needs X computed through degree {k}")
    budget = budget or Budget(10**9)
    orders = {n: _cell_order(_sk_delta(n, k)) for n in range(bound + 2)}
    index = {n: {t: j for j, t in enumerate(orders[n])} for n in orders}

    def levels(n):
        dom = _sk_delta(n, k)
        maps = enumerate_maps(dom, x, budget, context=f"cosk_{k} degree {n}")
        return [tuple(m[t] for t in orders[n]) for m in maps]

    def precompose(alpha: Monotone, m: int, key):
        # key is a map sk_k Delta^{alpha.cod} -> X; restrict along alpha
        vals = []
        for t in orders[m]:
            seq = tuple(alpha(v) for v in t)
            distinct = tuple(dict.fromkeys(seq))
            word = tuple(i for i in range(len(seq) - 2, -1, -1) if seq[i] == seq[i + 1])
            vals.append(x.degenerate(word, key[index[alpha.cod][distinct]]))
        return tuple(vals)

    def face(n, i, key):
        return precompose(coface(n, i), n - 1, key)

    def degen(n, i, key):
        return precompose(codegeneracy(n, i), n + 1, key)

    raw = sset_from_raw(bound, levels, face, degen, label=f"cosk_{k}({x.label})")
    return CoskResult(raw, x, k, bound)


# -- mapping spaces -----------------------------------------------------------


class CylinderFamily:
    """The products K x Delta^n for varying n, with restriction along any
    monotone map in the Delta factor.  Shared by mapping spaces and ends."""

    def __init__(self, k: SimplicialSet, budget: Budget):
        self.k = k
        self.budget = budget
        self._prods: dict[int, ProductSSet] = {}
        self._orders: dict[int, list[Cell]] = {}
        self._index: dict[int, dict[Cell, int]] = {}

    def prod(self, n: int) -> ProductSSet:
        if n not in self._prods:
            p = product(self.k, standard_simplex(n, n), self.k.dim() + n, self.budget)
            self._prods[n] = p
            self._orders[n] = _cell_order(p)
            self._index[n] = {c: j for j, c in enumerate(self._orders[n])}
        return self._prods[n]

    def order(self, n: int) -> list[Cell]:
        self.prod(n)
        return self._orders[n]

    def restrict(self, alpha: Monotone, key: tuple, target) -> tuple:
        """Precompose a value tuple (a map K x Delta^{alpha.cod} -> target,
        listed in cell order) with id_K x Delta^alpha."""
        src = self.prod(alpha.dom)
        big = self.prod(alpha.cod)
        idx = self._index[alpha.cod]
        vals = []
        for c in self._orders[alpha.dom]:
            sa, sb = c
            d = src.degree(c)
            im = big.pair_simplex(sa, delta_apply(alpha, sb, alpha.dom, d))
            vals.append(target.degenerate(im.word, key[idx[im.cell]]))
        return tuple(vals)


def mapping_space(k: SimplicialSet, y, bound: int,
                  budget: Budget | None = None) -> RawNormalization:
    """Simplicial mapping space: degree-n cells are maps K x Delta^n -> Y."""
    budget = budget or Budget(10**9)
    cyl = CylinderFamily(k, budget)

    def levels(n):
        maps = enumerate_maps(cyl.prod(n), y, budget, context=f"mapping_space degree {n}")
        return [tuple(m[c] for c in cyl.order(n)) for m in maps]

    def face(n, i, key):
        return cyl.restrict(coface(n, i), key, y)

    def degen(n, i, key):
        return cyl.restrict(codegeneracy(n, i), key, y)

    return sset_from_raw(bound, levels, face, degen, label=f"map({k.label},{y.label})")


# -- Čech powers --------------------------------------------------------------


@dataclass
class CechPower:
    """The simplicial set of vertex tuples of a finite set, with the extra
    append-the-basepoint operator exhibiting contractibility."""

    labels: tuple
    basepoint: object
    sset: SimplicialSet

    def extra_degeneracy(self, t: tuple) -> tuple:
        """S(z_0, ..., z_m) = (z_0, ..., z_m, v); S(*) = (v,)."""
        return tuple(t) + (self.basepoint,)


def cech_face(i: int, t: tuple) -> tuple:
    return t[:i] + t[i + 1 :]


def cech_degen(i: int, t: tuple) -> tuple:
    return t[: i + 1] + t[i:]


def cech_power(labels, bound: int, basepoint=None) -> CechPower:
    """Degree-p cells are (p+1)-tuples from the label set; faces delete a
    coordinate and degeneracies duplicate one."""
    labels = tuple(labels)
    if not labels:
        raise ValueError("cech_power needs a nonempty label set")
    base = labels[0] if basepoint is None else basepoint
    assert base in labels

    def levels(n):
        out = [()]
        for _ in range(n + 1):
            out = [t + (v,) for t in out for v in labels]
        return out

    raw = sset_from_raw(
        bound,
        levels,
        lambda n, i, t: cech_face(i, t),
        lambda n, i, t: cech_degen(i, t),
        label=f"cech({len(labels)})",
    )
    return CechPower(labels, base, raw.sset)


def contracting_homotopy_failures(c: CechPower, through_degree: int) -> list[str]:
    """Check every identity of the extra degeneracy on every tuple up to the
    given degree; returns a list of human-readable failures (empty == pass)."""
    bad = []
    s = c.extra_degeneracy
    # augmentation: S(*) = basepoint vertex
    if s(()) != (c.basepoint,):
        bad.append("S(*) is not the basepoint")
    tuples = [(v,) for v in c.labels]
    for m in range(0, through_degree + 1):
        for t in tuples:
            st = s(t)
            for i in range(m + 1):
                if cech_face(i, st) != s(cech_face(i, t)):
                    bad.append(f"d_{i} S != S d_{i} on {t}")
            if cech_face(m + 1, st) != t:
                bad.append(f"d_top S != id on {t}")
            for i in range(m + 1):
                if s(cech_degen(i, t)) != cech_degen(i, st):
                    bad.append(f"S s_{i} != s_{i} S on {t}")
        tuples = [t + (v,) for t in tuples for v in c.labels]
    return bad
