"""Brute-force homology oracle, independent of the package's machinery.

Works directly on simplicial complexes: degree-n simplices are ALL weakly
increasing (n+1)-tuples of vertices whose support is a face (degenerate
ones included), the boundary is the full alternating sum, and betti
numbers come from exact rational ranks.  Homology of the unnormalized
complex agrees with the normalized one, so this cross-checks both the
normal-form bookkeeping and the Smith reduction without sharing any code
with them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement


def weak_simplices(k, n: int) -> list[tuple]:
    """All weakly increasing (n+1)-tuples supported on a face of k."""
    pos = {v: i for i, v in enumerate(k.vertices)}
    faces = {tuple(sorted(f, key=pos.get)) for f in k.faces}
    out = []
    for tup in combinations_with_replacement(k.vertices, n + 1):
        tup = tuple(sorted(tup, key=pos.get))
        if tuple(dict.fromkeys(tup)) in faces:
            out.append(tup)
    return sorted(out, key=lambda t: tuple(pos[v] for v in t))


def rational_rank(rows: list[list[int]]) -> int:
    m = [[Fraction(v) for v in row] for row in rows if any(row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(m) and col < ncols:
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def unnormalized_betti(k, r: int, reduced: bool = True) -> list[int]:
    """Reduced betti numbers through degree r via the full simplex lists."""
    levels = [weak_simplices(k, n) for n in range(r + 2)]
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]

    def boundary(n: int) -> list[list[int]]:
        rows = len(levels[n - 1]) if n >= 1 else (1 if reduced else 0)
        mat = [[0] * len(levels[n]) for _ in range(rows)]
        if n == 0:
            if reduced:
                for j in range(len(levels[0])):
                    mat[0][j] = 1
            return mat
        for j, t in enumerate(levels[n]):
            for i in range(n + 1):
                face = t[:i] + t[i + 1 :]
                mat[index[n - 1][face]][j] += (-1) ** i
        return mat

    ranks = {}
    for n in range(0, r + 2):
        ranks[n] = rational_rank(boundary(n))
    return [len(levels[n]) - ranks[n] - ranks[n + 1] for n in range(r + 1)]
