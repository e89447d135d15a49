"""Exact polytope toolkit: face lattices, gluing, projective geometry and constructions."""
from .geometry import VPolytope, hull, labl, polar
from .poset import FaceLattice, check_lattice, find_isomorphism
from .projective import OrientedPoint, Projectivity

__version__ = "0.1.0"

__all__ = ["FaceLattice", "OrientedPoint", "Projectivity", "VPolytope", "check_lattice", "find_isomorphism",
           "hull", "labl", "polar"]
