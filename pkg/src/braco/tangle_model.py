"""Disoriented chain complex of a bridge-decomposed tangle or link projection.

Underbridges are the 0-handles and overbridges the disoriented
1-handles.  An overbridge meets the point sequence ``start``, its
crossings in order, then ``end``; consecutive subarcs carry opposite
orientations, so each crossing contributes twice the crossed underbridge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain_core import AbelianGroup, DisorientedComplex, IntMatrix, homology_at


class DiagramError(ValueError):
    """An input diagram that cannot be turned into a complex."""


@dataclass(frozen=True)
class Overbridge:
    start: str
    crossings: tuple[str, ...]
    end: str
    disorientation: int = 1
    id: str = ""

    def points(self) -> tuple[str, ...]:
        return (self.start, *self.crossings, self.end)


@dataclass(frozen=True)
class BridgeDiagram:
    underbridges: tuple[str, ...]
    overbridges: tuple[Overbridge, ...] = ()
    endpoints: dict = field(default_factory=dict)  # underbridge id -> tangle endpoints it carries

    def overbridge_ids(self) -> list[str]:
        return [o.id or f"o{k + 1}" for k, o in enumerate(self.overbridges)]


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_if_failed(self):
        if self.errors:
            raise DiagramError("; ".join(self.errors))


def validate_bridge_diagram(d: BridgeDiagram) -> ValidationReport:
    rep = ValidationReport()
    if not d.underbridges:
        rep.errors.append("diagram has no underbridges")
        return rep
    known = set(d.underbridges)
    if len(known) != len(d.underbridges):
        rep.errors.append("duplicate underbridge id")
    ids = d.overbridge_ids()
    if len(set(ids)) != len(ids):
        rep.errors.append("duplicate overbridge id")
    used = set()
    for oid, o in zip(ids, d.overbridges):
        if o.disorientation not in (1, -1):
            rep.errors.append(f"overbridge {oid}: disorientation must be +1 or -1")
        for u in o.points():
            if u not in known:
                rep.errors.append(f"overbridge {oid} references unknown underbridge {u!r}")
            used.add(u)
    for u, n in d.endpoints.items():
        if u not in known:
            rep.errors.append(f"endpoint annotation on unknown underbridge {u!r}")
        elif n not in (0, 1, 2):
            rep.errors.append(f"underbridge {u} carries {n} endpoints; expected 0, 1 or 2")
    for u in d.underbridges:
        if u not in used:
            rep.warnings.append(f"underbridge {u} is isolated")
    return rep


def overbridge_boundary(o: Overbridge, index: dict) -> list[int]:
    """Column of the boundary map for one overbridge.

    Subarc ``s_i`` joins points ``i-1`` and ``i`` and points forward
    (away from the start) exactly when ``sigma * (-1)**(i-1) == +1``.  A
    forward subarc leaves ``p_{i-1}`` and enters ``p_i``.
    """
    col = [0] * len(index)
    pts = o.points()
    for i in range(1, len(pts)):
        s = o.disorientation * (1 if i % 2 == 1 else -1)
        col[index[pts[i - 1]]] -= s
        col[index[pts[i]]] += s
    return col


def build_tangle_complex(d: BridgeDiagram) -> DisorientedComplex:
    validate_bridge_diagram(d).raise_if_failed()
    index = {u: i for i, u in enumerate(d.underbridges)}
    cols = [overbridge_boundary(o, index) for o in d.overbridges]
    nu, no = len(index), len(cols)
    dmat = IntMatrix(nu, no, tuple(cols[j][i] for i in range(nu) for j in range(no)))
    eps = IntMatrix(1, nu, (1,) * nu)
    return DisorientedComplex(
        lo=-1, hi=1, ranks={-1: 1, 0: nu, 1: no}, boundaries={0: eps, 1: dmat},
        labels={-1: ["1"], 0: list(d.underbridges), 1: d.overbridge_ids()})


COVER_DEGREE = {1: "H~2", 0: "H~1", -1: "H~0"}


@dataclass(frozen=True)
class TangleHomologyReport:
    complex: DisorientedComplex
    H1: AbelianGroup
    H0: AbelianGroup
    Hm1: AbelianGroup

    @property
    def cover_identification(self) -> dict:
        """Degree k of the complex against reduced degree k+1 of the cover."""
        return {COVER_DEGREE[k]: g for k, g in ((1, self.H1), (0, self.H0), (-1, self.Hm1))}


def tangle_homology(d: BridgeDiagram) -> TangleHomologyReport:
    c = build_tangle_complex(d)
    rep = TangleHomologyReport(c, homology_at(c, 1), homology_at(c, 0), homology_at(c, -1))
    if not rep.Hm1.is_trivial:
        raise AssertionError("augmentation of a nonempty diagram must be onto")
    return rep


def cover_handles(d: BridgeDiagram) -> dict:
    """Chain-level handle data of the branched double cover of the 3-ball.

    Two 0-handles (the two copies of the ball), one 1-handle per
    underbridge running from the lower copy to the upper one, and one
    2-handle per overbridge attached along the doubled overbridge.
    """
    c = build_tangle_complex(d)
    nu, no = c.ranks[0], c.ranks[1]
    d1 = IntMatrix(2, nu, tuple([-1] * nu + [1] * nu))
    return {
        "handles": {0: 2, 1: nu, 2: no},
        "boundaries": {1: d1, 2: c.boundaries[1]},
        "labels": {0: ["B-", "B+"], 1: list(d.underbridges), 2: d.overbridge_ids()},
    }
