"""Slice-surface descriptions and their disoriented complexes.

A description lists 0-handles, 1-handles (with the 0-handles they pass
through, in order along the core) and 2-handles (as signed, weighted
traversals of 1-handle cores).  Two complexes are built from it: the
cellular one on degrees -1..2, and for ribbon surfaces the two-term
complex over a set of virtual bands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain_core import AbelianGroup, DisorientedComplex, IntMatrix, homology_at
from .tangle_model import DiagramError, ValidationReport


@dataclass(frozen=True)
class OneHandle:
    id: str
    start: str
    end: str
    ribbon_word: tuple[str, ...] = ()
    disorientation: int = 1

    def points(self) -> tuple[str, ...]:
        return (self.start, *self.ribbon_word, self.end)


@dataclass(frozen=True)
class Traversal:
    one_handle: str
    sign: int
    weight: int = 1


@dataclass(frozen=True)
class TwoHandle:
    id: str
    traversals: tuple[Traversal, ...] = ()


@dataclass(frozen=True)
class SurfaceDescription:
    zero_handles: tuple[str, ...]
    one_handles: tuple[OneHandle, ...] = ()
    two_handles: tuple[TwoHandle, ...] = ()

    @property
    def is_ribbon(self) -> bool:
        return not self.two_handles

    def euler_characteristic(self) -> int:
        return len(self.zero_handles) - len(self.one_handles) + len(self.two_handles)


def _one_handle_column(h: OneHandle, index: dict) -> list[int]:
    # same alternation rule as tangle overbridges
    col = [0] * len(index)
    pts = h.points()
    for i in range(1, len(pts)):
        s = h.disorientation * (1 if i % 2 == 1 else -1)
        col[index[pts[i - 1]]] -= s
        col[index[pts[i]]] += s
    return col


def _two_handle_column(d: TwoHandle, index: dict) -> list[int]:
    col = [0] * len(index)
    for t in d.traversals:
        col[index[t.one_handle]] += t.sign * t.weight
    return col


def _check_ids(s: SurfaceDescription, rep: ValidationReport) -> None:
    for kind, ids in (("0-handle", s.zero_handles), ("1-handle", [h.id for h in s.one_handles]),
                      ("2-handle", [d.id for d in s.two_handles])):
        seen = set()
        for i in ids:
            if i in seen:
                rep.errors.append(f"duplicate {kind} id {i!r}")
            seen.add(i)


def validate_surface_description(s: SurfaceDescription) -> ValidationReport:
    rep = ValidationReport()
    if not s.zero_handles:
        rep.errors.append("surface has no 0-handles")
        return rep
    _check_ids(s, rep)
    zero = set(s.zero_handles)
    ones = {h.id: h for h in s.one_handles}
    for h in s.one_handles:
        if h.disorientation not in (1, -1):
            rep.errors.append(f"1-handle {h.id}: disorientation must be +1 or -1")
        for m in h.points():
            if m not in zero:
                rep.errors.append(f"1-handle {h.id} references unknown 0-handle {m!r}")
    for d in s.two_handles:
        for t in d.traversals:
            if t.one_handle not in ones:
                rep.errors.append(f"2-handle {d.id} traverses unknown 1-handle {t.one_handle!r}")
            if t.sign not in (1, -1):
                rep.errors.append(f"2-handle {d.id}: traversal sign must be +1 or -1")
            if t.weight not in (1, 2):
                rep.errors.append(f"2-handle {d.id}: traversal weight must be 1 or 2")
    if rep.errors:
        return rep
    zindex = {m: i for i, m in enumerate(s.zero_handles)}
    hindex = {h.id: j for j, h in enumerate(s.one_handles)}
    cols = [_one_handle_column(h, zindex) for h in s.one_handles]
    for d in s.two_handles:
        coeff = _two_handle_column(d, hindex)
        image = [sum(c[i] * coeff[j] for j, c in enumerate(cols)) for i in range(len(zindex))]
        if any(image):
            rep.errors.append(f"2-handle {d.id}: traversals do not form a cycle")
    return rep


def build_cellular_complex(s: SurfaceDescription) -> DisorientedComplex:
    validate_surface_description(s).raise_if_failed()
    zindex = {m: i for i, m in enumerate(s.zero_handles)}
    hindex = {h.id: j for j, h in enumerate(s.one_handles)}
    nm, nh, nd = len(zindex), len(hindex), len(s.two_handles)
    c1 = [_one_handle_column(h, zindex) for h in s.one_handles]
    c2 = [_two_handle_column(d, hindex) for d in s.two_handles]
    d1 = IntMatrix(nm, nh, tuple(c1[j][i] for i in range(nm) for j in range(nh)))
    d2 = IntMatrix(nh, nd, tuple(c2[j][i] for i in range(nh) for j in range(nd)))
    return DisorientedComplex(
        lo=-1, hi=2, ranks={-1: 1, 0: nm, 1: nh, 2: nd},
        boundaries={0: IntMatrix(1, nm, (1,) * nm), 1: d1, 2: d2},
        labels={-1: ["1"], 0: list(s.zero_handles), 1: list(hindex), 2: [d.id for d in s.two_handles]})


COVER_DEGREE = {2: "H~3", 1: "H~2", 0: "H~1", -1: "H~0"}


@dataclass(frozen=True)
class SurfaceHomologyReport:
    complex: DisorientedComplex
    DH2: AbelianGroup
    DH1: AbelianGroup
    DH0: AbelianGroup
    DHm1: AbelianGroup

    @property
    def cover_identification(self) -> dict:
        return {COVER_DEGREE[k]: g for k, g in
                ((2, self.DH2), (1, self.DH1), (0, self.DH0), (-1, self.DHm1))}

    @property
    def handle_counts(self) -> dict:
        """Handles of the branched double cover of the 4-ball, by index."""
        r = self.complex.ranks
        return {0: 2, 1: r[0], 2: r[1], 3: r[2]}


def surface_homology(s: SurfaceDescription) -> SurfaceHomologyReport:
    c = build_cellular_complex(s)
    rep = SurfaceHomologyReport(c, *(homology_at(c, k) for k in (2, 1, 0, -1)))
    if not rep.DHm1.is_trivial:
        raise AssertionError("augmentation must be onto")
    return rep


def cover_handles(s: SurfaceDescription) -> dict:
    """Chain-level handle data of the branched double cover of the 4-ball.

    Two 0-handles, then one k-handle for each (k-1)-handle of the surface;
    the boundary maps are the augmentation spread over the two 0-handles
    followed by the cellular boundary maps.
    """
    c = build_cellular_complex(s)
    nm = c.ranks[0]
    return {
        "handles": {0: 2, 1: nm, 2: c.ranks[1], 3: c.ranks[2]},
        "boundaries": {1: IntMatrix(2, nm, tuple([-1] * nm + [1] * nm)),
                       2: c.boundaries[1], 3: c.boundaries[2]},
        "labels": {0: ["B-", "B+"], 1: c.labels[0], 2: c.labels[1], 3: c.labels[2]},
    }


def disjoint_union(a: SurfaceDescription, b: SurfaceDescription,
                   prefixes: tuple[str, str] = ("a.", "b.")) -> SurfaceDescription:
    def rename(s, p):
        return (tuple(p + m for m in s.zero_handles),
                tuple(OneHandle(p + h.id, p + h.start, p + h.end,
                                tuple(p + m for m in h.ribbon_word), h.disorientation)
                      for h in s.one_handles),
                tuple(TwoHandle(p + d.id, tuple(Traversal(p + t.one_handle, t.sign, t.weight)
                                                for t in d.traversals))
                      for d in s.two_handles))
    za, oa, ta = rename(a, prefixes[0])
    zb, ob, tb = rename(b, prefixes[1])
    return SurfaceDescription(za + zb, oa + ob, ta + tb)


# -- virtual bands ---------------------------------------------------------------

@dataclass(frozen=True)
class VirtualBand:
    id: str
    attaches: tuple[str, str]
    orientation: int = 1


@dataclass(frozen=True)
class CutComponent:
    ref: str
    zero_handles: tuple[str, ...]
    cuts: int
    is_disk: bool
    has_interior_arc: bool

    @property
    def is_two_cut_disk(self) -> bool:
        return self.is_disk and self.cuts == 2


def cut_surface(r: SurfaceDescription) -> list[CutComponent]:
    """Components of the ribbon surface cut along its properly embedded arcs.

    A component holding 0-handles is named by its first 0-handle; the
    rectangle of 1-handle ``h`` between its i-th and (i+1)-th ribbon
    singularity is named ``h#i``.
    """
    parent = {m: m for m in r.zero_handles}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    full_bands = []
    cuts = {m: 0 for m in r.zero_handles}
    pieces = []
    for h in r.one_handles:
        k = len(h.ribbon_word)
        if k == 0:
            full_bands.append((h.start, h.end))
            a, b = find(h.start), find(h.end)
            if a != b:
                parent[b] = a
        else:
            cuts[h.start] += 1
            cuts[h.end] += 1
            pieces += [f"{h.id}#{i}" for i in range(1, k)]
    interior = {m for h in r.one_handles for m in h.ribbon_word}
    groups: dict[str, list[str]] = {}
    for m in r.zero_handles:
        groups.setdefault(find(m), []).append(m)
    out = []
    for ms in groups.values():
        members = set(ms)
        nbands = sum(1 for a, _ in full_bands if a in members)
        out.append(CutComponent(
            ref=ms[0], zero_handles=tuple(ms), cuts=sum(cuts[m] for m in ms),
            is_disk=nbands == len(ms) - 1, has_interior_arc=bool(members & interior)))
    out += [CutComponent(p, (), 2, True, False) for p in pieces]
    return out


def _resolve_component(comps: list[CutComponent], ref: str) -> str | None:
    for c in comps:
        if ref == c.ref or ref in c.zero_handles:
            return c.ref
    return None


def validate_virtual_bands(r: SurfaceDescription, bands: list[VirtualBand]) -> ValidationReport:
    rep = validate_surface_description(r)
    if not r.is_ribbon:
        rep.errors.append("virtual-band complex needs a ribbon description (no 2-handles)")
    if rep.errors:
        return rep
    comps = cut_surface(r)
    if not bands:
        if len(comps) > 1:
            rep.errors.append("cut surface is disconnected; virtual bands are required")
        return rep
    ends = []
    for v in bands:
        if v.orientation not in (1, -1):
            rep.errors.append(f"virtual band {v.id}: orientation must be +1 or -1")
        for ref in v.attaches:
            c = _resolve_component(comps, ref)
            if c is None:
                rep.errors.append(f"virtual band {v.id} attaches to unknown component {ref!r}")
            ends.append(c)
        if len(v.attaches) != 2:
            rep.errors.append(f"virtual band {v.id} must attach at two ends")
    if rep.errors:
        return rep
    touched = set(ends)
    for c in comps:
        if not c.is_two_cut_disk and c.ref not in touched:
            rep.errors.append(f"component {c.ref} is not a disk with two cuts but has no virtual band")
        if c.has_interior_arc and c.ref not in touched:
            rep.errors.append(f"component {c.ref} contains an interior arc but has no virtual band")
    # connectivity of the band graph on touched components
    adj = {c: set() for c in touched}
    for i in range(0, len(ends), 2):
        adj[ends[i]].add(ends[i + 1])
        adj[ends[i + 1]].add(ends[i])
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        for y in adj[stack.pop()] - seen:
            seen.add(y)
            stack.append(y)
    if seen != touched:
        rep.errors.append("graph of virtual bands is not connected")
    return rep


def virtual_band_generators(r: SurfaceDescription, bands: list[VirtualBand]) -> list[str]:
    """Generator labels of the first group of the virtual-band complex.

    One per 1-handle, one per virtual band closing a cycle in the band
    graph, and one per touched rectangle (attaching there splits a
    1-handle in two).
    """
    comps = cut_surface(r)
    gens = [h.id for h in r.one_handles]
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for v in bands:
        a, b = (_resolve_component(comps, x) for x in v.attaches)
        if find(a) == find(b):
            gens.append(v.id)
        else:
            parent[find(b)] = find(a)
    pieces = {c.ref for c in comps if not c.zero_handles}
    touched = {_resolve_component(comps, x) for v in bands for x in v.attaches}
    gens += sorted(pieces & touched)
    return gens


def build_virtual_band_complex(r: SurfaceDescription, bands: list[VirtualBand],
                               crossings: list[tuple[str, str, int]]) -> DisorientedComplex:
    """Two-term complex ``DC_1 -> DC_0`` with ``DC_0`` free on the virtual bands.

    ``crossings`` holds ``(generator, band, signed count)`` records: the
    signed number of times the generator passes over the band in its
    chosen direction.  Repeated records add up.
    """
    validate_virtual_bands(r, bands).raise_if_failed()
    gens = virtual_band_generators(r, bands)
    gi = {g: j for j, g in enumerate(gens)}
    vi = {v.id: i for i, v in enumerate(bands)}
    rows = [[0] * len(gens) for _ in bands]
    for g, v, n in crossings:
        if g not in gi:
            raise DiagramError(f"unknown generator {g!r}; expected one of {gens}")
        if v not in vi:
            raise DiagramError(f"unknown virtual band {v!r}")
        rows[vi[v]][gi[g]] += n * bands[vi[v]].orientation
    d = IntMatrix.from_rows(rows, len(gens))
    return DisorientedComplex(lo=0, hi=1, ranks={0: len(bands), 1: len(gens)},
                              boundaries={1: d},
                              labels={0: [v.id for v in bands], 1: gens})
