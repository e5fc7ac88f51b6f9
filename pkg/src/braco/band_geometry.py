"""Band presentations of ribbon-immersed surfaces, compiled to crossing lists.

A band diagram is a set of disks plus bands.  Each band runs from a
slot on one disk to a slot on another (or the same) disk and meets a
sequence of events along its core: half twists, crossings with other
bands or itself, and passes through a disk (ribbon singularities).

Nothing is laid out in the plane.  Every event expands to a fixed table
of signed crossings between the strands living on the band:

* the generator core (disoriented: its direction flips at every pass),
* the two normal pushoffs of the core,
* the two boundary edges and their parallels pushed into the surface.

Linking numbers are then half the weighted signed crossing count.

Model of a ribbon pass.  The band arrives in front of the disk, runs
down through it along the interior arc, turns and leaves behind the
disk, so the two legs lie side by side over the disk.  Config ``L`` has
the front leg on the left of the back leg (seen looking at the disk
along the arrival direction), ``R`` on the right.  The pushoffs follow
the four-segment local model at the singularity.  A numerical Gauss
integral on an explicit embedding shows that this model adds nothing to
the self-pairing in either config, so the pass emits no core/pushoff
crossings.  The legs do cross the disk boundary, front leg over and
back leg under, inside the chosen boundary gap of the disk; those
crossings feed the boundary framing.

Slots: positions on a disk increase counterclockwise (disk on the left).
A band leaves its start slot with its left edge on the counterclockwise
side.  Gap ``g`` of a disk with sorted slots ``s_1..s_m`` is the boundary
arc from ``s_g`` to ``s_{g+1}``; gap 0 runs from ``s_m`` back to ``s_1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .chain_core import IntMatrix, kernel_basis, smith_form
from .tangle_model import DiagramError, ValidationReport


class InvariantViolation(RuntimeError):
    """A computed object broke a property the theory guarantees."""


# -- input model -------------------------------------------------------------------

@dataclass(frozen=True)
class HalfTwist:
    sign: int


@dataclass(frozen=True)
class Cross:
    other: str  # band id, or "self"
    over: bool
    sign: int   # crossing sign for the reference directions of both cores
    label: str  # shared by the two reciprocal records


@dataclass(frozen=True)
class RibbonPass:
    disk: str
    config: str  # "L" or "R"
    gap: int = 0


Event = Union[HalfTwist, Cross, RibbonPass]


@dataclass(frozen=True)
class Band:
    id: str
    start: tuple[str, int]
    end: tuple[str, int]
    events: tuple = ()

    def passes_before(self, i: int) -> int:
        return sum(isinstance(e, RibbonPass) for e in self.events[:i])

    def twists_before(self, i: int) -> int:
        return sum(isinstance(e, HalfTwist) for e in self.events[:i])

    @property
    def twist_parity(self) -> int:
        return self.twists_before(len(self.events)) % 2

    def ribbon_word(self) -> tuple[str, ...]:
        return tuple(e.disk for e in self.events if isinstance(e, RibbonPass))


@dataclass(frozen=True)
class BandDiagram:
    disks: tuple[str, ...]
    bands: tuple[Band, ...] = ()

    def band(self, bid: str) -> Band:
        for b in self.bands:
            if b.id == bid:
                return b
        raise KeyError(bid)

    def slots(self, disk: str) -> list[tuple[int, str, str]]:
        """Sorted ``(position, band id, 'start'|'end')`` slots on a disk."""
        out = []
        for b in self.bands:
            if b.start[0] == disk:
                out.append((b.start[1], b.id, "start"))
            if b.end[0] == disk:
                out.append((b.end[1], b.id, "end"))
        return sorted(out)


def validate_band_diagram(bd: BandDiagram) -> ValidationReport:
    rep = ValidationReport()
    if not bd.disks:
        rep.errors.append("band diagram has no disks")
        return rep
    disks = set(bd.disks)
    if len(disks) != len(bd.disks):
        rep.errors.append("duplicate disk id")
    ids = [b.id for b in bd.bands]
    if len(set(ids)) != len(ids):
        rep.errors.append("duplicate band id")
    if "self" in ids:
        rep.errors.append("'self' is reserved and cannot be a band id")
    occupied: dict = {}
    for b in bd.bands:
        for end in (b.start, b.end):
            d, pos = end
            if d not in disks:
                rep.errors.append(f"band {b.id} attaches to unknown disk {d!r}")
            elif (d, pos) in occupied:
                rep.errors.append(f"slot {pos} on disk {d} used twice ({occupied[(d, pos)]}, {b.id})")
            else:
                occupied[(d, pos)] = b.id
    crossings: dict = {}
    for b in bd.bands:
        for i, e in enumerate(b.events):
            if isinstance(e, HalfTwist):
                if e.sign not in (1, -1):
                    rep.errors.append(f"band {b.id}: half twist sign must be +1 or -1")
            elif isinstance(e, RibbonPass):
                if e.disk not in disks:
                    rep.errors.append(f"band {b.id} passes through unknown disk {e.disk!r}")
                    continue
                if e.config not in ("L", "R"):
                    rep.errors.append(f"band {b.id}: ribbon config must be 'L' or 'R'")
                ngaps = max(1, len(bd.slots(e.disk)))
                if not 0 <= e.gap < ngaps:
                    rep.errors.append(f"band {b.id}: gap {e.gap} out of range on disk {e.disk}")
            elif isinstance(e, Cross):
                if e.sign not in (1, -1):
                    rep.errors.append(f"band {b.id}: crossing sign must be +1 or -1")
                other = b.id if e.other == "self" else e.other
                if other not in ids:
                    rep.errors.append(f"band {b.id} crosses unknown band {e.other!r}")
                crossings.setdefault(e.label, []).append((b.id, i, e, other))
            else:
                rep.errors.append(f"band {b.id}: unknown event {e!r}")
    for label, recs in sorted(crossings.items()):
        if len(recs) != 2:
            rep.errors.append(f"crossing {label!r} has {len(recs)} records; expected 2")
            continue
        (b1, _, e1, o1), (b2, _, e2, o2) = recs
        if o1 != b2 or o2 != b1:
            rep.errors.append(f"crossing {label!r}: records do not reference each other")
        if e1.over == e2.over:
            rep.errors.append(f"crossing {label!r}: exactly one record must be the over strand")
        if e1.sign != e2.sign:
            rep.errors.append(f"crossing {label!r}: records disagree on the sign")
    return rep


# -- weighted diagrams and linking numbers ---------------------------------------------

@dataclass(frozen=True)
class Crossing:
    over: str
    under: str
    sign: int
    site: str


@dataclass(frozen=True)
class WeightedDiagram:
    """Oriented strands with weights, plus the crossings they take part in.

    ``strands`` maps a strand name to ``(weight, orientation)``; the
    orientation (+1/-1) says whether the strand runs along or against
    the direction its crossings were recorded for.  Crossings may
    involve strands of other diagrams compiled from the same scene.
    """
    strands: dict
    crossings: tuple[Crossing, ...] = ()

    def __post_init__(self):
        for name, (w, o) in self.strands.items():
            if w < 1:
                raise DiagramError(f"strand {name} has weight {w} < 1")
            if o not in (1, -1):
                raise DiagramError(f"strand {name} has orientation {o}")


def linking_number(a: WeightedDiagram, b: WeightedDiagram) -> int:
    shared = set(a.strands) & set(b.strands)
    if shared:
        raise DiagramError(f"diagrams share strands {sorted(shared)}")
    total = 0
    for c in set(a.crossings) | set(b.crossings):
        if c.over in a.strands and c.under in b.strands:
            (wa, oa), (wb, ob) = a.strands[c.over], b.strands[c.under]
        elif c.over in b.strands and c.under in a.strands:
            (wa, oa), (wb, ob) = a.strands[c.under], b.strands[c.over]
        else:
            continue
        total += c.sign * wa * oa * wb * ob
    if total % 2:
        raise DiagramError("odd crossing sum between the diagrams; malformed input")
    return total // 2


# -- boundary tracing --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryComponent:
    id: str
    pieces: tuple[tuple[tuple, int], ...]  # (piece, direction relative to its natural one)


def _endpoint_slots(bd: BandDiagram):
    """Boundary pieces and the slot endpoints they join.

    Band edges run from start to end; edge 0 is the left edge at the
    start.  Disk arcs run counterclockwise.
    """
    pieces = []
    for b in bd.bands:
        s, e = b.start, b.end
        odd = b.twist_parity
        pieces.append((("edge", b.id, 0), (s, "hi"), (e, "hi" if odd else "lo")))
        pieces.append((("edge", b.id, 1), (s, "lo"), (e, "lo" if odd else "hi")))
    for d in bd.disks:
        sl = [(d, pos) for pos, _, _ in bd.slots(d)]
        if not sl:
            pieces.append((("arc", d, 0), None, None))
            continue
        m = len(sl)
        for g in range(m):
            a, z = sl[g - 1], sl[g]  # gap g runs from slot g-1 (cyclically) to slot g
            pieces.append((("arc", d, g), (a, "hi"), (z, "lo")))
    return pieces


def trace_boundary(bd: BandDiagram) -> list[BoundaryComponent]:
    pieces = _endpoint_slots(bd)
    at: dict = {}
    for p, tail, head in pieces:
        if tail is None:
            continue
        at.setdefault(tail, []).append((p, +1))
        at.setdefault(head, []).append((p, -1))
    ends = {p: (tail, head) for p, tail, head in pieces}
    seen = set()
    comps = []
    for p, tail, head in pieces:
        if p in seen:
            continue
        if tail is None:
            seen.add(p)
            comps.append(((p, 1),))
            continue
        cyc, cur, d = [], p, 1
        while cur not in seen:
            seen.add(cur)
            cyc.append((cur, d))
            exit_pt = ends[cur][1] if d == 1 else ends[cur][0]
            nxt = [(q, s) for q, s in at[exit_pt] if (q, s) != (cur, -d)]
            q, s = nxt[0]
            cur, d = q, s
        comps.append(tuple(cyc))
    return [BoundaryComponent(f"K{i + 1}", c) for i, c in enumerate(comps)]


# -- scene compilation --------------------------------------------------------------------

def _core(b):
    return f"core:{b}"


def _push(b, s):
    return f"push{'+' if s > 0 else '-'}:{b}"


def _edge(b, k):
    return f"edge{k}:{b}"


def _par(b, k):
    return f"par{k}:{b}"


def _darc(d, g):
    return f"arc{g}:{d}"


def _dpar(d, g):
    return f"arcpar{g}:{d}"


@dataclass
class Scene:
    diagram: BandDiagram
    edge_dir: dict        # (band, edge index) -> direction along the band reference
    arc_dir: dict         # (disk, gap) -> direction against counterclockwise
    crossings: list = field(default_factory=list)

    def add(self, over, under, sign, site):
        self.crossings.append(Crossing(over, under, sign, site))


def _band_strands(scene: Scene, b: Band, i: int) -> list[tuple[str, int]]:
    """Strands on band ``b`` just before event ``i`` with their directions.

    Listed left to right across the band in the projection.
    """
    o = -1 if b.passes_before(i) % 2 else 1
    left = b.twists_before(i) % 2  # which physical edge is on the left
    out = [(_edge(b.id, left), scene.edge_dir.get((b.id, left), 0)),
           (_par(b.id, left), scene.edge_dir.get((b.id, left), 0)),
           (_push(b.id, +1), o), (_push(b.id, -1), o), (_core(b.id), o),
           (_par(b.id, 1 - left), scene.edge_dir.get((b.id, 1 - left), 0)),
           (_edge(b.id, 1 - left), scene.edge_dir.get((b.id, 1 - left), 0))]
    return [(s, d) for s, d in out if d]


def compile_scene(bd: BandDiagram, orientations: Sequence[int] | None = None) -> Scene:
    """Expand every event into signed crossings.

    Boundary strands are included only when ``orientations`` gives a
    direction (+1/-1) to every traced boundary component.
    """
    validate_band_diagram(bd).raise_if_failed()
    edge_dir, arc_dir = {}, {}
    if orientations is not None:
        comps = trace_boundary(bd)
        if len(orientations) != len(comps):
            raise DiagramError(f"{len(comps)} boundary components need orientations, "
                               f"got {len(orientations)}")
        for comp, o in zip(comps, orientations):
            if o not in (1, -1):
                raise DiagramError("boundary orientations must be +1 or -1")
            for (kind, x, k), d in comp.pieces:
                (edge_dir if kind == "edge" else arc_dir)[(x, k)] = o * d
    scene = Scene(bd, edge_dir, arc_dir)

    # crossings between bands
    recs: dict = {}
    for b in bd.bands:
        for i, e in enumerate(b.events):
            if isinstance(e, Cross):
                recs.setdefault(e.label, []).append((b, i, e))
    for label in sorted(recs):
        (b1, i1, e1), (b2, i2, e2) = recs[label]
        (ob, oi), (ub, ui) = ((b1, i1), (b2, i2)) if e1.over else ((b2, i2), (b1, i1))
        for xs, dx in _band_strands(scene, ob, oi):
            for ys, dy in _band_strands(scene, ub, ui):
                if xs != ys:
                    scene.add(xs, ys, e1.sign * dx * dy, f"x:{label}")

    for b in bd.bands:
        for i, e in enumerate(b.events):
            site = f"{b.id}@{i}"
            if isinstance(e, HalfTwist):
                # every pair of strands swaps sides; with t=+1 the strand
                # moving left-to-right passes over
                strands = _band_strands(scene, b, i)
                for p in range(len(strands)):
                    for q in range(p + 1, len(strands)):
                        (xs, dx), (ys, dy) = strands[p], strands[q]
                        over, under = (xs, ys) if e.sign > 0 else (ys, xs)
                        scene.add(over, under, e.sign * dx * dy, f"t:{site}:{p}{q}")
            elif isinstance(e, RibbonPass):
                darc, dpar = _darc(e.disk, e.gap), _dpar(e.disk, e.gap)
                dd = arc_dir.get((e.disk, e.gap), 0)
                if not dd:
                    continue
                # front leg (directions before the pass) over the disk edge,
                # back leg (directions after) under it
                front = _band_strands(scene, b, i)
                back = _band_strands(scene, b, i + 1)
                for xs, dx in front:
                    for ys in (darc, dpar):
                        scene.add(xs, ys, -dx * dd, f"r:{site}:front")
                for xs, dx in back:
                    for ys in (darc, dpar):
                        scene.add(ys, xs, dx * dd, f"r:{site}:back")
    return scene


# -- generators, pushoffs, pairing ------------------------------------------------------

@dataclass(frozen=True)
class DisorientedCycle:
    """Integer combination of band generators, keyed by band id."""
    coefficients: tuple[tuple[str, int], ...]

    @classmethod
    def generator(cls, band: str) -> "DisorientedCycle":
        return cls(((band, 1),))

    @classmethod
    def from_vector(cls, bands: Sequence[str], vec: Sequence[int]) -> "DisorientedCycle":
        return cls(tuple((b, int(n)) for b, n in zip(bands, vec) if n))

    def as_dict(self) -> dict:
        out: dict = {}
        for b, n in self.coefficients:
            out[b] = out.get(b, 0) + n
        return {b: n for b, n in out.items() if n}


def _scene_crossings(bd_or_scene) -> Scene:
    return bd_or_scene if isinstance(bd_or_scene, Scene) else compile_scene(bd_or_scene)


def generator_cycles(bd: BandDiagram) -> list[DisorientedCycle]:
    """One generator per band.

    The core is oriented away from the start slot and reverses at every
    pass.  Its loose ends (and the short arcs leaving each pass) are
    joined inside the disks; disks are linked by implicit embedded
    virtual bands from the first disk, drawn clear of everything else.
    """
    validate_band_diagram(bd).raise_if_failed()
    return [DisorientedCycle.generator(b.id) for b in bd.bands]


def cycle_diagram(scene_or_bd, c: DisorientedCycle) -> WeightedDiagram:
    scene = _scene_crossings(scene_or_bd)
    st = {_core(b): (abs(n), 1 if n > 0 else -1) for b, n in c.as_dict().items()}
    return WeightedDiagram(st, tuple(scene.crossings))


def double_pushoff(scene_or_bd, c: DisorientedCycle) -> WeightedDiagram:
    """Both normal pushoffs of ``c``, each carrying the coefficient as weight."""
    scene = _scene_crossings(scene_or_bd)
    st = {}
    for b, n in c.as_dict().items():
        for s in (1, -1):
            st[_push(b, s)] = (abs(n), 1 if n > 0 else -1)
    return WeightedDiagram(st, tuple(scene.crossings))


def cellular_boundary(bd: BandDiagram) -> IntMatrix:
    """Disk-by-band matrix of the cellular boundary of the band cores."""
    index = {d: i for i, d in enumerate(bd.disks)}
    cols = []
    for b in bd.bands:
        col = [0] * len(index)
        pts = (b.start[0], *b.ribbon_word(), b.end[0])
        for i in range(1, len(pts)):
            s = 1 if i % 2 == 1 else -1
            col[index[pts[i - 1]]] -= s
            col[index[pts[i]]] += s
        cols.append(col)
    n, m = len(index), len(cols)
    return IntMatrix(n, m, tuple(cols[j][i] for i in range(n) for j in range(m)))


def virtual_boundary(bd: BandDiagram) -> IntMatrix:
    """Passes of each generator over the implicit virtual bands.

    Virtual band ``i`` joins disk ``i`` (for ``i >= 1``) to the first disk
    and points towards it, so its row is row ``i`` of the cellular
    boundary.
    """
    d = cellular_boundary(bd)
    return d.submatrix(range(1, d.rows), range(d.cols))


def full_pairing(bd: BandDiagram, scene: Scene | None = None) -> IntMatrix:
    """Pairing on all band generators of the virtually banded surface."""
    scene = scene or compile_scene(bd)
    gens = generator_cycles(bd)
    n = len(gens)
    cyc = [cycle_diagram(scene, g) for g in gens]
    push = [double_pushoff(scene, g) for g in gens]
    rows = [[linking_number(cyc[i], push[j]) for j in range(n)] for i in range(n)]
    m = IntMatrix.from_rows(rows, n)
    if not m.is_symmetric():
        raise InvariantViolation(f"pairing is not symmetric: {rows}")
    return m


@dataclass(frozen=True)
class CappedClass:
    """A capped boundary component and its class in the band generators."""
    coefficients: tuple[int, ...]
    component: str | None = None


@dataclass(frozen=True)
class PairingMatrix:
    matrix: IntMatrix
    basis: tuple[tuple[int, ...], ...]   # basis vectors in band-generator coordinates
    bands: tuple[str, ...]


def _solve_integral(k: IntMatrix, v: Sequence[int]) -> list[int]:
    """Integer ``y`` with ``k @ y == v`` for ``k`` of full column rank."""
    rows, cols = k.rows, k.cols
    a = [[Fraction(k[i, j]) for j in range(cols)] + [Fraction(v[i])] for i in range(rows)]
    piv_cols, r = [], 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][cols] for i in range(r, rows)):
        raise DiagramError("capped class is not a disoriented cycle of the surface")
    y = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        y[c] = a[i][cols]
    if any(x.denominator != 1 for x in y):
        raise DiagramError("capped class is not an integral combination of the cycle basis")
    return [int(x) for x in y]


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    n = u.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(u.to_rows())]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return IntMatrix.from_rows([[int(x) for x in r[n:]] for r in a], n)


def _congruent(m: IntMatrix, basis: IntMatrix) -> IntMatrix:
    return basis.transpose() @ m @ basis


def gl_pairing_matrix(bd: BandDiagram, capped: Iterable[CappedClass] = (),
                      scene: Scene | None = None) -> PairingMatrix:
    """Pairing on the first disoriented homology, optionally modulo capped classes."""
    capped = list(capped)
    full = full_pairing(bd, scene)
    bands = tuple(b.id for b in bd.bands)
    k = kernel_basis(virtual_boundary(bd))
    lam = _congruent(full, k)
    basis = k
    if capped:
        ys = []
        for cc in capped:
            if len(cc.coefficients) != len(bands):
                raise DiagramError(f"capped class needs {len(bands)} coefficients")
            beta = IntMatrix(len(bands), 1, tuple(cc.coefficients))
            pair = (k.transpose() @ full @ beta).entries
            if any(pair):
                raise InvariantViolation(
                    f"capped class {list(cc.coefficients)} pairs nontrivially: {list(pair)}")
            ys.append(_solve_integral(k, cc.coefficients))
        y = IntMatrix.from_rows([list(r) for r in zip(*ys)], len(ys)) if k.cols else IntMatrix.zeros(0, len(ys))
        sf = smith_form(y)
        uinv = _unimodular_inverse(sf.left) if k.cols else IntMatrix.zeros(0, 0)
        keep = list(range(sf.rank, k.cols))
        c = uinv.submatrix(range(k.cols), keep)
        lam = _congruent(lam, c)
        basis = k @ c
    if not lam.is_symmetric():
        raise InvariantViolation("restricted pairing is not symmetric")
    vecs = tuple(tuple(basis.column(j)) for j in range(basis.cols))
    return PairingMatrix(lam, vecs, bands)


# -- boundary framing ------------------------------------------------------------------

def boundary_links(bd: BandDiagram, orientations: Sequence[int],
                   exclude: Iterable[str] = (), scene: Scene | None = None
                   ) -> tuple[WeightedDiagram, WeightedDiagram, list[str]]:
    """The oriented boundary link and its parallel on the surface.

    Components named in ``exclude`` (capped ones) are left out.
    """
    scene = scene or compile_scene(bd, orientations)
    excl = set(exclude)
    comps = trace_boundary(bd)
    unknown = excl - {c.id for c in comps}
    if unknown:
        raise DiagramError(f"unknown boundary components {sorted(unknown)}")
    link, par, kept = {}, {}, []
    for c in comps:
        if c.id in excl:
            continue
        kept.append(c.id)
        for (kind, x, k), _ in c.pieces:
            if kind == "edge":
                link[_edge(x, k)] = (1, 1)
                par[_par(x, k)] = (1, 1)
            else:
                link[_darc(x, k)] = (1, 1)
                par[_dpar(x, k)] = (1, 1)
    cr = tuple(scene.crossings)
    return WeightedDiagram(link, cr), WeightedDiagram(par, cr), kept


def boundary_parallel_linking(bd: BandDiagram, orientations: Sequence[int],
                              exclude: Iterable[str] = ()) -> int:
    link, par, kept = boundary_links(bd, orientations, exclude)
    if not kept:
        raise DiagramError("surface has no boundary (every component is capped)")
    return linking_number(link, par)
