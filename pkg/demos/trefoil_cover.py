"""Double branched cover of the trefoil from a three-bridge diagram."""

from braco import BridgeDiagram, Overbridge, tangle_homology
from braco.tangle_model import build_tangle_complex

trefoil = BridgeDiagram(("u1", "u2", "u3"), (
    Overbridge("u1", ("u3",), "u2", -1),
    Overbridge("u1", ("u2",), "u3", 1),
    Overbridge("u2", ("u1",), "u3", 1),
))

print("boundary:", build_tangle_complex(trefoil).boundary(1).to_rows())
r = tangle_homology(trefoil)
print("H1 =", r.H1, " H0 =", r.H0)
for k, g in r.cover_identification.items():
    print(f"cover {k} = {g}")
