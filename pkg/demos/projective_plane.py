"""Ribbon projective plane: homology from handles, pairing from a band diagram."""

from braco import (Band, BandDiagram, CappedClass, HalfTwist, OneHandle, RibbonPass,
                   SurfaceDescription, Traversal, TwoHandle, gl_pairing_matrix, surface_homology)

handles = SurfaceDescription(("m",), (OneHandle("h", "m", "m", ("m",)),),
                             (TwoHandle("d", (Traversal("h", 1), Traversal("h", -1))),))
r = surface_homology(handles)
print("DH2 =", r.DH2, " DH1 =", r.DH1, " DH0 =", r.DH0)

for sign, config in ((1, "R"), (-1, "L")):
    bands = BandDiagram(("m",), (Band("h", ("m", 0), ("m", 1), (HalfTwist(sign), RibbonPass("m", config))),))
    lam = gl_pairing_matrix(bands, [CappedClass((0,), "K1")]).matrix
    print(f"half twist {sign:+d}, config {config}: lambda = {lam.to_rows()}")
