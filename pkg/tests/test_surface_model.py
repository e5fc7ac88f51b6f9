import pytest
from hypothesis import given, settings, strategies as st

from braco.chain_core import AbelianGroup, homology_at
from braco.surface_model import (OneHandle, SurfaceDescription, Traversal, TwoHandle, VirtualBand,
                                 build_cellular_complex, build_virtual_band_complex, cover_handles,
                                 cut_surface, disjoint_union, surface_homology,
                                 validate_surface_description, validate_virtual_bands)
from braco.tangle_model import DiagramError
from strategies import ribbon_descriptions, surface_descriptions

SETTINGS = settings(max_examples=200, deadline=None)

RP2 = SurfaceDescription(("m",), (OneHandle("h", "m", "m", ("m",)),),
                         (TwoHandle("d", (Traversal("h", 1), Traversal("h", -1))),))
VIRTUAL = SurfaceDescription(("m1", "m2"), (OneHandle("h", "m1", "m1", ("m2",)),), ())


def test_projective_plane():
    r = surface_homology(RP2)
    assert (str(r.DH2), str(r.DH1), str(r.DH0), str(r.DHm1)) == ("Z", "Z", "0", "0")
    assert r.complex.boundary(1).to_rows() == [[0]]
    assert r.complex.boundary(2).to_rows() == [[0]]
    assert r.handle_counts == {0: 2, 1: 1, 2: 1, 3: 1}
    assert r.cover_identification["H~3"] == AbelianGroup(1)


def test_ribbon_annulus_boundary_vanishes():
    s = SurfaceDescription(("m",), (OneHandle("h", "m", "m"),), ())
    assert build_cellular_complex(s).boundary(1).to_rows() == [[0]]


def test_band_through_second_disk():
    c = build_cellular_complex(VIRTUAL)
    assert c.boundary(1).to_rows() == [[-2], [2]]
    r = surface_homology(VIRTUAL)
    assert (str(r.DH1), str(r.DH0)) == ("0", "Z/2")
    assert str(r.cover_identification["H~1"]) == "Z/2"


def test_virtual_band_complex_matches_cellular():
    bands = [VirtualBand("V", ("m1", "m2"))]
    c = build_virtual_band_complex(VIRTUAL, bands, [("h", "V", 2)])
    assert c.boundary(1).to_rows() == [[2]]
    assert str(homology_at(c, 1)) == "0" and str(homology_at(c, 0)) == "Z/2"


def test_generator_missing_all_bands_is_a_cycle():
    s = SurfaceDescription(("m1", "m2"), (OneHandle("h", "m1", "m1", ("m2",)),
                                          OneHandle("k", "m1", "m1")), ())
    c = build_virtual_band_complex(s, [VirtualBand("V", ("m1", "m2"))], [("h", "V", 2)])
    assert c.boundary(1).column(1) == [0]


def test_disk_without_virtual_bands():
    s = SurfaceDescription(("m",), (), ())
    c = build_virtual_band_complex(s, [], [])
    assert homology_at(c, 0).is_trivial
    r = surface_homology(s)
    assert all(g.is_trivial for g in (r.DH2, r.DH1, r.DH0, r.DHm1))


def test_virtual_band_conditions():
    assert not validate_virtual_bands(VIRTUAL, []).ok
    rep = validate_virtual_bands(VIRTUAL, [VirtualBand("V", ("m1", "m9"))])
    assert not rep.ok


def test_cut_surface_components():
    comps = {c.ref: c for c in cut_surface(VIRTUAL)}
    assert comps["m2"].has_interior_arc and not comps["m1"].has_interior_arc


def test_not_a_cycle_rejected():
    s = SurfaceDescription(("m1", "m2"), (OneHandle("h", "m1", "m2"),),
                           (TwoHandle("d", (Traversal("h", 1),)),))
    rep = validate_surface_description(s)
    assert rep.errors == ["2-handle d: traversals do not form a cycle"]
    with pytest.raises(DiagramError):
        build_cellular_complex(s)


def test_empty_surface_rejected():
    assert not validate_surface_description(SurfaceDescription((), (), ())).ok


def test_cover_handles_chain_level():
    h = cover_handles(RP2)
    assert h["handles"] == {0: 2, 1: 1, 2: 1, 3: 1}
    assert (h["boundaries"][1] @ h["boundaries"][2]).is_zero()


@SETTINGS
@given(surface_descriptions())
def test_boundary_composites_vanish(s):
    c = build_cellular_complex(s)
    assert (c.boundary(0) @ c.boundary(1)).is_zero()
    assert (c.boundary(1) @ c.boundary(2)).is_zero()
    assert surface_homology(s).DHm1.is_trivial


@SETTINGS
@given(surface_descriptions())
def test_euler_characteristic(s):
    r = surface_homology(s)
    alt = r.DH0.free_rank - r.DH1.free_rank + r.DH2.free_rank
    # the augmented complex has Euler characteristic #m - #h + #d - 1
    assert alt == s.euler_characteristic() - 1 + r.DHm1.free_rank


@SETTINGS
@given(surface_descriptions(), st.data())
def test_disorientation_flip_invariance(s, data):
    if not s.one_handles:
        return
    k = data.draw(st.integers(0, len(s.one_handles) - 1))
    h = s.one_handles[k]
    ones = list(s.one_handles)
    ones[k] = OneHandle(h.id, h.start, h.end, h.ribbon_word, -h.disorientation)
    twos = tuple(TwoHandle(d.id, tuple(Traversal(t.one_handle, -t.sign if t.one_handle == h.id else t.sign,
                                                 t.weight) for t in d.traversals))
                 for d in s.two_handles)
    s2 = SurfaceDescription(s.zero_handles, tuple(ones), twos)
    a, b = surface_homology(s), surface_homology(s2)
    assert (a.DH2, a.DH1, a.DH0) == (b.DH2, b.DH1, b.DH0)
    m1, m2 = a.complex.boundary(1), b.complex.boundary(1)
    assert m1.column(k) == [-x for x in m2.column(k)]


@SETTINGS
@given(surface_descriptions(), st.data())
def test_label_permutation_invariance(s, data):
    s2 = SurfaceDescription(tuple(data.draw(st.permutations(s.zero_handles))),
                            tuple(data.draw(st.permutations(s.one_handles))),
                            tuple(data.draw(st.permutations(s.two_handles))))
    a, b = surface_homology(s), surface_homology(s2)
    assert (a.DH2, a.DH1, a.DH0) == (b.DH2, b.DH1, b.DH0)


@settings(max_examples=100, deadline=None)
@given(surface_descriptions(), surface_descriptions())
def test_disjoint_union_additive(a, b):
    u = surface_homology(disjoint_union(a, b))
    ra, rb = surface_homology(a), surface_homology(b)
    for g, x, y in ((u.DH2, ra.DH2, rb.DH2), (u.DH1, ra.DH1, rb.DH1)):
        assert g.free_rank == x.free_rank + y.free_rank
        assert g.torsion_order == x.torsion_order * y.torsion_order


@SETTINGS
@given(ribbon_descriptions())
def test_virtual_band_complex_agrees_with_cellular(r):
    """Star of virtual bands from the first cut component; counts from the cores."""
    comps = cut_surface(r)
    if len(comps) < 2:
        return
    hub = comps[0].ref
    bands = [VirtualBand(f"V{i}", (c.ref, hub)) for i, c in enumerate(comps[1:])]
    # a core passes virtual band i as often as it enters the zero-handles of component i
    cell = build_cellular_complex(r).boundary(1)
    owner = {}
    for c in comps:
        for m in c.zero_handles:
            owner[m] = c.ref
    # tree bands inside a cut component are collapsed by the virtual model
    if any(c.zero_handles == () or len(c.zero_handles) > 1 for c in comps):
        return
    recs = []
    for j, h in enumerate(r.one_handles):
        for i, c in enumerate(comps[1:]):
            n = sum(cell[r.zero_handles.index(m), j] for m in c.zero_handles)
            if n:
                recs.append((h.id, f"V{i}", n))
    if not validate_virtual_bands(r, bands).ok:
        return
    c = build_virtual_band_complex(r, bands, recs)
    if c.ranks[1] != len(r.one_handles):
        return
    cellular = surface_homology(r)
    assert homology_at(c, 1) == cellular.DH1
    assert homology_at(c, 0) == cellular.DH0
