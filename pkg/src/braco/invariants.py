"""Signatures of boundary links and determinants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .band_geometry import (BandDiagram, CappedClass, DiagramError, RibbonPass,
                            boundary_links, compile_scene, gl_pairing_matrix,
                            linking_number, trace_boundary)
from .chain_core import determinant, signature_of_form
from .surface_model import SurfaceDescription, surface_homology
from .tangle_model import BridgeDiagram, tangle_homology

Orientations = Union[Sequence[int], Mapping[str, int]]


@dataclass(frozen=True)
class SignatureReport:
    sigma_lambda: int
    boundary_framing: int
    sigma_link: int
    orientation_record: tuple[tuple[str, int], ...]
    capped: tuple[str, ...] = ()


def _surface_components(bd: BandDiagram) -> dict:
    """Map each disk to a representative of its surface component."""
    parent = {d: d for d in bd.disks}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in bd.bands:
        parent[find(b.start[0])] = find(b.end[0])
    return {d: find(d) for d in bd.disks}


def _component_owner(bd: BandDiagram, comp) -> str:
    kind, x, _ = comp.pieces[0][0]
    disk = bd.band(x).start[0] if kind == "edge" else x
    return _surface_components(bd)[disk]


def _resolve_orientations(bd: BandDiagram, orientations: Orientations,
                          skip: Iterable[str] = ()) -> list[int]:
    comps = trace_boundary(bd)
    skip = set(skip)
    if isinstance(orientations, Mapping):
        unknown = set(orientations) - {c.id for c in comps}
        if unknown:
            raise DiagramError(f"orientation given for unknown components {sorted(unknown)}")
        out = []
        for c in comps:
            if c.id in orientations:
                out.append(orientations[c.id])
            elif c.id in skip:
                out.append(1)
            else:
                raise DiagramError(f"no orientation given for boundary component {c.id}")
    else:
        out = list(orientations)
        if len(out) != len(comps):
            raise DiagramError(f"{len(comps)} boundary components need orientations, got {len(out)}")
    if any(o not in (1, -1) for o in out):
        raise DiagramError("orientations must be +1 or -1")
    return out


def boundary_signature(bd: BandDiagram, orientations: Orientations,
                       capped: Iterable[CappedClass] = ()) -> SignatureReport:
    """Signature of the boundary link of a slice surface.

    ``capped`` lists capped boundary components (by id) together with
    their classes; they are removed from the boundary link.
    """
    capped = list(capped)
    names = [c.component for c in capped]
    if any(n is None for n in names):
        raise DiagramError("every capped class must name its boundary component")
    comps = trace_boundary(bd)
    owners: dict = {}
    for c in comps:
        owners.setdefault(_component_owner(bd, c), []).append(c.id)
    for owner, ids in sorted(owners.items()):
        if set(ids) <= set(names):
            raise DiagramError(f"surface component through disk {owner} is closed "
                               "(every boundary component capped)")
    orient = _resolve_orientations(bd, orientations, skip=names)
    scene = compile_scene(bd, orient)
    lam = gl_pairing_matrix(bd, capped, scene=scene).matrix
    link, par, kept = boundary_links(bd, orient, names, scene=scene)
    lk = linking_number(link, par)
    if lk % 2:
        raise DiagramError(f"boundary framing {lk} is odd; inconsistent input")
    s = signature_of_form(lam).signature
    record = tuple((c.id, o) for c, o in zip(comps, orient) if c.id in kept)
    return SignatureReport(s, lk, s - lk // 2, record, tuple(names))


def cobordism_signature_delta(bd: BandDiagram, orientations: Orientations,
                              ends: Mapping[str, int]) -> int:
    """Predicted ``sigma(L1) - sigma(L0)`` for an embedded projected cobordism.

    ``ends`` assigns every boundary component to end 0 or end 1; either
    end may be empty.
    """
    for b in bd.bands:
        if any(isinstance(e, RibbonPass) for e in b.events):
            raise DiagramError(f"band {b.id} has a ribbon singularity; "
                               "the projected cobordism must be embedded")
    comps = [c.id for c in trace_boundary(bd)]
    if set(ends) != set(comps) or any(v not in (0, 1) for v in ends.values()):
        raise DiagramError(f"ends must map each of {comps} to 0 or 1")
    orient = _resolve_orientations(bd, orientations)
    scene = compile_scene(bd, orient)
    s = signature_of_form(gl_pairing_matrix(bd, scene=scene).matrix).signature
    lks = []
    for side in (0, 1):
        other = [c for c in comps if ends[c] != side]
        link, par, _ = boundary_links(bd, orient, other, scene=scene)
        lks.append(linking_number(link, par))
    diff = lks[0] - lks[1]
    if diff % 2:
        raise DiagramError("odd framing difference; inconsistent input")
    return s + diff // 2


@dataclass(frozen=True)
class DeterminantReport:
    value: int          # 0 when the relevant group has positive rank
    finite: bool
    source: str

    def __str__(self):
        return str(self.value) if self.finite else "0 (infinite first homology)"


def determinant_report(d: Union[BridgeDiagram, SurfaceDescription, BandDiagram],
                       capped: Iterable[CappedClass] = ()) -> DeterminantReport:
    """Order of the first homology of the branched double cover.

    For a bridge diagram or surface description this is the order of the
    degree-0 homology; for a band diagram it is ``|det lambda|``.
    """
    if isinstance(d, BridgeDiagram):
        g = tangle_homology(d).H0
        src = "torsion of H0"
    elif isinstance(d, SurfaceDescription):
        g = surface_homology(d).DH0
        src = "torsion of DH0"
    elif isinstance(d, BandDiagram):
        lam = gl_pairing_matrix(d, capped).matrix
        v = abs(determinant(lam))
        return DeterminantReport(v, v != 0, "|det lambda|")
    else:
        raise TypeError(f"no determinant for {type(d).__name__}")
    if g.free_rank:
        return DeterminantReport(0, False, src)
    return DeterminantReport(g.torsion_order, True, src)
