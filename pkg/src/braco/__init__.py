"""Homology and intersection pairings of branched double covers from diagrams."""

from .band_geometry import (Band, BandDiagram, CappedClass, Cross, HalfTwist, RibbonPass,
                            boundary_parallel_linking, gl_pairing_matrix, linking_number)
from .chain_core import AbelianGroup, IntMatrix, signature_of_form, smith_normal_form
from .invariants import boundary_signature, cobordism_signature_delta, determinant_report
from .surface_model import OneHandle, SurfaceDescription, Traversal, TwoHandle, surface_homology
from .tangle_model import BridgeDiagram, Overbridge, tangle_homology

__all__ = [
    "AbelianGroup", "Band", "BandDiagram", "BridgeDiagram", "CappedClass", "Cross", "HalfTwist",
    "IntMatrix", "OneHandle", "Overbridge", "RibbonPass", "SurfaceDescription", "Traversal",
    "TwoHandle", "boundary_parallel_linking", "boundary_signature", "cobordism_signature_delta",
    "determinant_report", "gl_pairing_matrix", "linking_number", "signature_of_form",
    "smith_normal_form", "surface_homology", "tangle_homology",
]
