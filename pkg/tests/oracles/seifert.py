"""Seifert matrix of a closed braid from its canonical Seifert surface.

The Seifert circles are the braid strands' levels, one disk per strand
position, and each letter is a half-twisted band between neighbouring
disks.  A loop runs up one band and down the next band of the same
column.  Entries are ``lk(x, y+)`` with ``y+`` pushed off the positive
side.  The rule for loops on neighbouring columns with interleaved
intervals was fixed once against an external implementation during
development and is frozen here.
"""

from __future__ import annotations

from fractions import Fraction


def braid_seifert(n: int, word: list[int]) -> list[list[int]]:
    loops = []
    for col in range(1, n):
        occ = [(k, 1 if g > 0 else -1) for k, g in enumerate(word) if abs(g) == col]
        for j in range(len(occ) - 1):
            (p, e1), (q, e2) = occ[j], occ[j + 1]
            loops.append((col, p, q, e1, e2))
    m = len(loops)
    v = [[0] * m for _ in range(m)]
    for x, (i, p, q, e1, e2) in enumerate(loops):
        v[x][x] = -(e1 + e2) // 2
        for y, (j, r, s, _, _) in enumerate(loops):
            if j == i and r == q:
                v[x][y] = (e2 + 1) // 2
                v[y][x] = (e2 - 1) // 2
            elif j == i + 1:
                if p < r < q < s:
                    v[x][y] = -1
                elif r < p < s < q:
                    v[x][y] = 1
    return v


def symmetric_signature(s: list[list[int]]) -> int:
    """Signature by Gaussian elimination over the rationals (symmetric input)."""
    a = [[Fraction(x) for x in row] for row in s]
    n = len(a)
    sig = 0
    i = 0
    while i < n:
        piv = next((k for k in range(i, n) if a[k][k] != 0), None)
        if piv is None:
            off = next(((k, l) for k in range(i, n) for l in range(k + 1, n) if a[k][l] != 0), None)
            if off is None:
                break
            k, l = off
            # replace e_k by e_k + e_l (or e_k - e_l) to create a nonzero diagonal
            c = 1 if a[k][k] + 2 * a[k][l] + a[l][l] != 0 else -1
            for t in range(n):
                a[k][t] += c * a[l][t]
            for t in range(n):
                a[t][k] += c * a[t][l]
            piv = k
        a[i], a[piv] = a[piv], a[i]
        for row in a:
            row[i], row[piv] = row[piv], row[i]
        d = a[i][i]
        sig += 1 if d > 0 else -1
        for k in range(i + 1, n):
            f = a[k][i] / d
            if f:
                for t in range(i, n):
                    a[k][t] -= f * a[i][t]
        for k in range(i + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
        i += 1
    return sig


def braid_signature(n: int, word: list[int]) -> int:
    v = braid_seifert(n, word)
    m = len(v)
    return symmetric_signature([[v[i][j] + v[j][i] for j in range(m)] for i in range(m)])


def braid_determinant(n: int, word: list[int]) -> int:
    v = braid_seifert(n, word)
    m = len(v)
    a = [[Fraction(v[i][j] + v[j][i]) for j in range(m)] for i in range(m)]
    det = Fraction(1)
    for c in range(m):
        p = next((r for r in range(c, m) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, m):
            f = a[r][c] / a[c][c]
            for t in range(c, m):
                a[r][t] -= f * a[c][t]
    return abs(int(det))
