"""Exact integer homology via normalized chains and Smith normal form.

Two reduction engines: `smith_normal_form` is the certified one (returns
unimodular transforms, verified by multiplication), used where transforms
or torsion certificates matter; `invariant_factors` is a sparse engine for
the bulk homology of larger complexes.  They are cross-checked in tests.
All arithmetic is exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundError
from .sset import SimplicialSet, nd


@dataclass
class ChainComplex:
    """Normalized chains: basis in each degree, boundaries as sparse columns.

    boundary[n] maps degree-n chains to degree-(n-1) chains; column c lists
    (row, coefficient) pairs.  Degree -1 holds the augmentation when reduced.
    """

    basis: list[list]
    boundary: dict[int, dict[int, list[tuple[int, int]]]]
    reduced: bool

    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def boundary_matrix(self, n: int) -> list[list[int]]:
        rows = len(self.basis[n - 1]) if n >= 1 else (1 if self.reduced else 0)
        cols = len(self.basis[n]) if n < len(self.basis) else 0
        m = [[0] * cols for _ in range(rows)]
        for c, entries in self.boundary.get(n, {}).items():
            for r, v in entries:
                m[r][c] += v
        return m

    def verify_dd_zero(self) -> None:
        for n in range(1, len(self.basis)):
            cols = self.boundary.get(n, {})
            below = self.boundary.get(n - 1, {})
            for c, entries in cols.items():
                acc: dict[int, int] = {}
                for r, v in entries:
                    for r2, v2 in below.get(r, []):
                        acc[r2] = acc.get(r2, 0) + v * v2
                assert all(v == 0 for v in acc.values()), f"dd != 0 at degree {n}, column {c}"


def chains(x: SimplicialSet, b: int, reduced: bool = False) -> ChainComplex:
    """Normalized chain complex through degree b (faces with degenerate
    images are dropped)."""
    if b > x.bound:
        raise BoundError(f"chains through {b} but bound is {x.bound}")
    basis = [list(x.cells[n]) for n in range(b + 1)]
    index = [{c: j for j, c in enumerate(cs)} for cs in basis]
    boundary: dict[int, dict[int, list[tuple[int, int]]]] = {}
    for n in range(1, b + 1):
        cols = {}
        for j, c in enumerate(basis[n]):
            acc: dict[int, int] = {}
            for i in range(n + 1):
                f = x.faces[(c, i)]
                if f.is_degenerate:
                    continue
                r = index[n - 1][f.cell]
                acc[r] = acc.get(r, 0) + (-1) ** i
            cols[j] = [(r, v) for r, v in sorted(acc.items()) if v != 0]
        boundary[n] = cols
    if reduced:
        boundary[0] = {j: [(0, 1)] for j in range(len(basis[0]))}
    return ChainComplex(basis, boundary, reduced)


# -- dense certified SNF ------------------------------------------------------


@dataclass
class SNF:
    diag: list[int]
    u: list[list[int]]
    v: list[list[int]]
    rows: int
    cols: int
    u_inv: list[list[int]] | None = None
    v_inv: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def torsion(self) -> list[int]:
        return [d for d in self.diag if d > 1]


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                row = out[i]
                for j in range(m):
                    row[j] += v * bt[j]
    return out


def integer_det(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: list[list[int]]) -> SNF:
    """Diagonalize with unimodular row/column transforms: u . m . v = diag.

    Pivots are chosen with minimal absolute value to limit entry growth.
    Empty matrices are legal.  The certificate is verified before returning.
    """
    rows, cols = len(m), len(m[0]) if m else 0
    a = [row[:] for row in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]
    u_inv = [row[:] for row in u]
    v_inv = [row[:] for row in v]

    def row_op(i, j, q):  # row i -= q * row j; u_inv tracks the inverse op
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for r in range(rows):
            u_inv[r][j] += q * u_inv[r][i]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]
        v_inv[j] = [x + q * y for x, y in zip(v_inv[j], v_inv[i])]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in range(rows):
            u_inv[r][i], u_inv[r][j] = u_inv[r][j], u_inv[r][i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def negate_row(t):
        a[t] = [-x for x in a[t]]
        u[t] = [-x for x in u[t]]
        for r in range(rows):
            u_inv[r][t] = -u_inv[r][t]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1
        if t >= min(rows, cols):
            break
    # enforce the divisibility chain on the diagonal
    k = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if y and (x == 0 or y % x):
                # fold column i+1 into column i, then re-clear the 2x2 block
                col_op(i, i + 1, -1)
                while a[i + 1][i]:
                    q = a[i + 1][i] // a[i][i] if a[i][i] else 0
                    if a[i][i]:
                        row_op(i + 1, i, q)
                    if a[i + 1][i]:
                        swap_rows(i, i + 1)
                while a[i][i + 1]:
                    q = a[i][i + 1] // a[i][i]
                    col_op(i + 1, i, q)
                    if a[i][i + 1]:
                        swap_cols(i, i + 1)
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    diag = [a[i][i] for i in range(k)]
    check = _mat_mul(_mat_mul(u, m), v) if m else []
    for i in range(rows):
        for j in range(cols):
            want = diag[i] if i == j and i < k else 0
            assert check[i][j] == want, "SNF certificate failed"
    return SNF(diag, u, v, rows, cols, u_inv, v_inv)


# -- sparse invariant factors -------------------------------------------------


def invariant_factors(entries: dict[tuple[int, int], int], rows: int, cols: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix.

    Pivots prefer +-1 entries in sparse rows (lazy heap with stale-entry
    skipping), so boundary matrices reduce with no coefficient growth; the
    collected diagonal is folded into a divisibility chain at the end.
    """
    import heapq

    row: dict[int, dict[int, int]] = {}
    col: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            row.setdefault(r, {})[c] = v
            col.setdefault(c, set()).add(r)
    heap = [(len(rowr), r) for r, rowr in row.items()]
    heapq.heapify(heap)
    diag: list[int] = []
    while row:
        while heap:
            nnz, r = heapq.heappop(heap)
            if r in row and len(row[r]) == nnz:
                break
            if r in row:
                heapq.heappush(heap, (len(row[r]), r))
        else:
            r = next(iter(row))
        rowr = row[r]
        best_key = None
        best = None
        for c, v in rowr.items():
            key = (abs(v) != 1, len(col[c]), abs(v), c)
            if best_key is None or key < best_key:
                best_key = key
                best = (r, c)
        r0, c0 = best
        p = row[r0][c0]
        if abs(p) != 1:
            # make the pivot divide its row and column by gcd row operations
            again = True
            while again:
                again = False
                p = row[r0][c0]
                for r in list(col[c0]):
                    if r != r0 and row[r][c0] % p:
                        q = row[r][c0] // p
                        _add_row(row, col, r, r0, -q)
                        if abs(row[r].get(c0, 0)) < abs(p):
                            r0 = r
                            again = True
                            break
                if again:
                    continue
                for c in list(row[r0]):
                    if c != c0 and row[r0][c] % p:
                        q = row[r0][c] // p
                        _add_col(row, col, c, c0, -q)
                        if abs(row[r0].get(c, 0)) < abs(p):
                            c0 = c
                            again = True
                            break
        p = row[r0][c0]
        for r in list(col[c0]):
            if r != r0:
                q = row[r][c0] // p
                _add_row(row, col, r, r0, -q)
                if r in row:
                    heapq.heappush(heap, (len(row[r]), r))
        for c in list(row[r0]):
            if c != c0:
                q = row[r0][c] // p
                _add_col(row, col, c, c0, -q)
        diag.append(abs(p))
        for c in list(row[r0]):
            col[c].discard(r0)
            if not col[c]:
                del col[c]
        del row[r0]
    # fold into a divisibility chain
    import math

    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[j] % diag[i]:
                    g = math.gcd(diag[i], diag[j])
                    l = diag[i] * diag[j] // g
                    diag[i], diag[j] = g, l
                    changed = True
    return sorted(diag)


def _add_row(row, col, r, r_src, q):
    """row r += q * row r_src"""
    for c, v in row[r_src].items():
        new = row.setdefault(r, {}).get(c, 0) + q * v
        if new:
            row[r][c] = new
            col.setdefault(c, set()).add(r)
        else:
            row[r].pop(c, None)
            col[c].discard(r)
            if not col[c]:
                del col[c]
    if r in row and not row[r]:
        del row[r]


def _add_col(row, col, c, c_src, q):
    """col c += q * col c_src"""
    for r in list(col.get(c_src, ())):
        v = row[r][c_src]
        new = row[r].get(c, 0) + q * v
        if new:
            row[r][c] = new
            col.setdefault(c, set()).add(r)
        else:
            row[r].pop(c, None)
            col[c].discard(r)
            if c in col and not col[c]:
                del col[c]


# -- homology -----------------------------------------------------------------


@dataclass
class HomologyResult:
    reduced: bool
    rows: list[tuple[int, int, list[int]]]  # (degree, betti, torsion)

    def betti(self, n: int) -> int:
        for d, b, _ in self.rows:
            if d == n:
                return b
        raise KeyError(n)

    def torsion(self, n: int) -> list[int]:
        for d, _, t in self.rows:
            if d == n:
                return t
        raise KeyError(n)

    def table(self) -> list[dict]:
        return [{"degree": d, "betti": b, "torsion": t} for d, b, t in self.rows]


def _sparse_entries(cc: ChainComplex, n: int) -> tuple[dict, int, int]:
    cols = cc.boundary.get(n, {})
    entries = {}
    for c, items in cols.items():
        for r, v in items:
            entries[(r, c)] = v
    rows = len(cc.basis[n - 1]) if n >= 1 else (1 if cc.reduced else 0)
    ncols = len(cc.basis[n]) if n < len(cc.basis) else 0
    return entries, rows, ncols


def homology(x: SimplicialSet, r: int, reduced: bool = True) -> HomologyResult:
    """H_n (or reduced H_n) for 0 <= n <= r, by Smith reduction of the
    normalized boundary matrices.  Needs cells through degree r+1."""
    if x.bound < r + 1:
        raise BoundError(f"homology through {r} needs bound {r + 1}, have {x.bound}")
    cc = chains(x, r + 1, reduced=reduced)
    ranks: dict[int, int] = {}
    torsions: dict[int, list[int]] = {}
    for n in range(0, r + 2):
        entries, nrows, ncols = _sparse_entries(cc, n)
        if n == 0 and not reduced:
            ranks[n] = 0
            torsions[n] = []
            continue
        facs = invariant_factors(entries, nrows, ncols)
        ranks[n] = len(facs)
        torsions[n] = [d for d in facs if d > 1]
    rows = []
    for n in range(0, r + 1):
        cells_n = len(cc.basis[n])
        betti = cells_n - ranks[n] - ranks[n + 1]
        rows.append((n, betti, torsions[n + 1]))
    return HomologyResult(reduced, rows)


def reduced_homology_is_trivial(x: SimplicialSet, r: int) -> bool:
    h = homology(x, r, reduced=True)
    return all(b == 0 and not t for _, b, t in h.rows) and not _minus_one_homology(x)


def _minus_one_homology(x: SimplicialSet) -> bool:
    """Reduced H_{-1} is Z exactly for the empty simplicial set."""
    return x.is_empty()


def euler_characteristic(x: SimplicialSet) -> int:
    return sum((-1) ** n * len(cs) for n, cs in enumerate(x.cells))


def connectivity(x: SimplicialSet, b: int, simply_connected_hint: bool = False) -> tuple[int, str]:
    """Largest c <= b-1 with reduced homology trivial through degree c;
    -2 for the empty input, -1 for disconnected ones."""
    if x.bound < b + 1:
        raise BoundError(f"connectivity through {b} needs bound {b + 1}")
    tag = "Hurewicz-valid" if simply_connected_hint else "homological"
    if x.is_empty():
        return -2, tag
    h = homology(x, max(b - 1, 0), reduced=True)
    c = -1
    for n in range(0, b):
        if h.betti(n) == 0 and not h.torsion(n):
            c = n
        else:
            break
    return c, tag


# -- small graph isomorphism --------------------------------------------------


def graph_isomorphic(g, h) -> tuple[bool, dict | None]:
    """Exact isomorphism of 1-dimensional complexes (<= 12 vertices) by
    degree-refined backtracking; returns a witness vertex bijection."""
    for k in (g, h):
        if k.dim() > 1:
            raise ValueError("graph_isomorphic needs 1-dimensional complexes")
        if len(k.vertices) > 12:
            raise ValueError("graph_isomorphic capped at 12 vertices")
    gv, hv = list(g.vertices), list(h.vertices)
    ge = {frozenset(f) for f in g.faces if len(f) == 2}
    he = {frozenset(f) for f in h.faces if len(f) == 2}
    if len(gv) != len(hv) or len(ge) != len(he):
        return False, None

    def degrees(vs, es):
        return {v: sum(1 for e in es if v in e) for v in vs}

    dg, dh = degrees(gv, ge), degrees(hv, he)
    if sorted(dg.values()) != sorted(dh.values()):
        return False, None
    order = sorted(gv, key=lambda v: (-dg[v], gv.index(v)))
    mapping: dict = {}
    used: set = set()

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in hv:
            if w in used or dh[w] != dg[v]:
                continue
            ok = True
            for v2 in mapping:
                if (frozenset((v, v2)) in ge) != (frozenset((w, mapping[v2])) in he):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if rec(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if rec(0):
        return True, dict(mapping)
    return False, None


# -- induced maps on homology ---------------------------------------------------


def chain_map_matrix(f, n: int) -> list[list[int]]:
    """Matrix of a simplicial map on normalized degree-n chains."""
    src, tgt = f.source, f.target
    rows = {c: i for i, c in enumerate(tgt.cells[n])}
    m = [[0] * len(src.cells[n]) for _ in rows] if rows else []
    for j, c in enumerate(src.cells[n]):
        im = f.assignment[c]
        if not im.is_degenerate:
            m[rows[im.cell]][j] = 1
    return m


@dataclass
class HomologyBasis:
    """Integral presentation of H_n: kernel coordinates, relation SNF, and
    the indices of the free generators."""

    v_inv: list[list[int]]
    rank_d: int
    rel: SNF
    free_idx: list[int]
    reps: list[list[int]]  # cycle representatives in cell coordinates

    def coords(self, cycle: list[int]) -> list[int]:
        k = len(self.v_inv) - self.rank_d
        w = [
            sum(self.v_inv[self.rank_d + i][r] * cycle[r] for r in range(len(cycle)))
            for i in range(k)
        ]
        # verify the vector is honestly in the kernel span
        for i in range(self.rank_d):
            s = sum(self.v_inv[i][r] * cycle[r] for r in range(len(cycle)))
            assert s == 0, "vector is not a cycle"
        y = [sum(self.rel.u[i][j] * w[j] for j in range(len(w))) for i in range(len(w))]
        return [y[i] for i in self.free_idx]


def homology_basis(x, n: int) -> HomologyBasis:
    """Free-part basis of H_n with exact integer coordinates (unreduced)."""
    cc = chains(x, n + 1, reduced=False)
    d_n1 = cc.boundary_matrix(n + 1)
    cells = len(cc.basis[n])
    if n == 0:
        eye = [[int(i == j) for j in range(cells)] for i in range(cells)]
        snf_d = SNF([], [], eye, 0, cells, u_inv=[], v_inv=[r[:] for r in eye])
        rank_d = 0
    else:
        snf_d = smith_normal_form(cc.boundary_matrix(n))
        rank_d = snf_d.rank
    k = cells - rank_d
    # relations: boundary columns expressed in kernel coordinates
    cols1 = len(cc.basis[n + 1]) if n + 1 < len(cc.basis) else 0
    rel_rows = [
        [sum(snf_d.v_inv[rank_d + i][r] * d_n1[r][j] for r in range(cells))
         for j in range(cols1)]
        for i in range(k)
    ]
    rel = smith_normal_form(rel_rows)
    free_idx = [i for i in range(k) if i >= rel.rank]
    reps = []
    for i in free_idx:
        gen = [rel.u_inv[r][i] for r in range(k)]
        rep = [
            sum(snf_d.v[r][rank_d + t] * gen[t] for t in range(k))
            for r in range(cells)
        ]
        reps.append(rep)
    return HomologyBasis(snf_d.v_inv, rank_d, rel, free_idx, reps)


def homology_map(f, n: int) -> list[list[int]]:
    """Induced matrix on the free part of unreduced H_n (rows: target basis)."""
    hb_src = homology_basis(f.source, n)
    hb_tgt = homology_basis(f.target, n)
    cm = chain_map_matrix(f, n)
    cols = []
    for rep in hb_src.reps:
        img = [sum(cm[r][j] * rep[j] for j in range(len(rep))) for r in range(len(cm))]
        if not cm:
            img = [0] * len(f.target.cells[n])
        cols.append(hb_tgt.coords(img))
    # transpose: entry [i][j] = coordinate i of image of source generator j
    rows = len(hb_tgt.free_idx)
    return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]
