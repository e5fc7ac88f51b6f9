"""Signatures of (2,k) torus links from their twisted-band checkerboard surfaces."""

from braco import Band, BandDiagram, HalfTwist, boundary_signature, determinant_report
from braco.band_geometry import trace_boundary

for k in range(1, 8):
    for sign in (1, -1):
        surface = BandDiagram(("D",), (Band("A", ("D", 0), ("D", 1), (HalfTwist(sign),) * k),))
        orient = (1,) * len(trace_boundary(surface))
        r = boundary_signature(surface, orient)
        print(f"T(2,{sign * k:+d}): sigma(lambda) {r.sigma_lambda:+d}, framing {r.boundary_framing:+d}, "
              f"signature {r.sigma_link:+d}, determinant {determinant_report(surface)}")
