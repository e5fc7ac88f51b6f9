"""Closed braid diagrams as PD codes, faces and checkerboard shadings.

Strands run upward.  ``+i`` is a positive crossing between positions
``i-1`` and ``i`` (0-based); the over strand runs from the left position
to the right one.  PD tuples list four edge labels counterclockwise,
starting at the incoming under edge.
"""

from __future__ import annotations


def braid_pd(n: int, word: list[int]):
    """PD code of the braid closure, the south corner of each crossing
    and the slot where its over strand enters.

    The south corner is the region below the crossing, between the two
    strands it involves; its column index is ``abs(g)``.
    """
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    counter = iter(range(10 ** 6))
    start = [next(counter) for _ in range(n)]
    cur = list(start)
    raw = []
    for g in word:
        i = abs(g)
        left, right = cur[i - 1], cur[i]
        nl, nr = next(counter), next(counter)
        if g > 0:
            # over strand left->right: in_over=left (SW), out_over=nr (NE)
            # under strand right->left: in_under=right (SE), out_under=nl (NW)
            raw.append(((right, nr, nl, left), 3, 3))
        else:
            # under strand left->right: in_under=left (SW), out_under=nr (NE)
            # over strand right->left: in_over=right (SE), out_over=nl (NW)
            raw.append(((left, right, nr, nl), 0, 1))
        cur[i - 1], cur[i] = nl, nr
    for p in range(n):
        parent[cur[p]] = start[p]
    labels: dict = {}
    pd = []
    for tup, _, _ in raw:
        pd.append(tuple(labels.setdefault(find(e), len(labels)) for e in tup))
    return pd, [r[1] for r in raw], [r[2] for r in raw]


def faces(pd):
    """Faces as lists of corners ``(crossing, k)``.

    Corner ``k`` of a crossing sits counterclockwise between its edges
    ``k`` and ``k+1``.
    """
    where: dict = {}
    for x, tup in enumerate(pd):
        for k, e in enumerate(tup):
            where.setdefault(e, []).append((x, k))

    def other(x, k):
        occ = where[pd[x][k]]
        if occ[0] == (x, k):
            return occ[1]
        return occ[0]

    seen, out = set(), []
    for x in range(len(pd)):
        for k in range(4):
            if (x, k) in seen:
                continue
            face, cx, ck = [], x, k
            while (cx, ck) not in seen:
                seen.add((cx, ck))
                face.append((cx, ck))
                cx, ck = other(cx, (ck + 1) % 4)
            out.append(face)
    return out


def shading(pd, seed_corner):
    """Two-colour the faces; the face holding ``seed_corner`` is shaded.

    Returns (faces, shaded flags).  Corners ``k`` and ``k+1`` of a
    crossing lie in differently coloured faces.
    """
    fs = faces(pd)
    face_of = {c: i for i, f in enumerate(fs) for c in f}
    colour = {face_of[seed_corner]: True}
    stack = [face_of[seed_corner]]
    while stack:
        f = stack.pop()
        for x, k in fs[f]:
            for nb in ((x, (k + 1) % 4), (x, (k + 3) % 4)):
                g = face_of[nb]
                if g not in colour:
                    colour[g] = not colour[f]
                    stack.append(g)
                elif colour[g] == colour[f]:
                    raise ValueError("faces are not two-colourable")
    return fs, [colour[i] for i in range(len(fs))]


def bridge_from_braid_pd(pd, over_in):
    """Bridge presentation of a PD diagram.

    Every crossing contributes a short underbridge ``u<k>`` around its
    under strand; each diagram arc (from one undercrossing to the next)
    becomes an overbridge over the underbridges of the crossings it
    passes over.  ``over_in[k]`` is the PD slot (1 or 3) where the over
    strand enters crossing ``k``.  Returns plain data:
    ``(underbridges, [(start, crossings, end), ...])``.
    """
    where: dict = {}
    for x, tup in enumerate(pd):
        for k, e in enumerate(tup):
            where.setdefault(e, []).append((x, k))

    def head(x, k):
        occ = where[pd[x][k]]
        return occ[1] if occ[0] == (x, k) else occ[0]

    arcs = []
    for x in range(len(pd)):
        passed = []
        y, k = head(x, 2)
        while k != 0:
            if k != over_in[y]:
                raise ValueError("over strand entered through an outgoing slot")
            passed.append(f"u{y}")
            y, k = head(y, 4 - k)
        arcs.append((f"u{x}", passed, f"u{y}"))
    return [f"u{x}" for x in range(len(pd))], arcs
