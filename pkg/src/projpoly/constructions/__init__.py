"""Combinatorial gadgets glued into anchors, cube stamps and stamps."""
from .algebra import AlgebraicField, AlgebraicNumberSpec, RelationProgram, check_relations, relation_program
from .anchors import StubArithmeticProvider, anchor, anchor_size_lower_bound, r_alpha, validate_provider
from .assembly import Assembly, Gadget, Port
from .cube import cube_lattice, cube_polytope, cube_stamp
from .gadgets import adapter, connector, lamppost
from .pentagons import (HypothesisError, check_hypotheses, hypothesis_violations, normalize_pose, pentagon_pairs,
                        pose_violations)
from .stamps import StampManifest, StampResult, rational_anchor_spec, stamp
from .tents import (ConstructionError, TransmitterSpec, VisibilitySpec, forgetful_transmitter, full_transmitter,
                    geometric_transmitter, polygon_forgetful_gadget, polygon_visibility, tent, tent_geometric,
                    transmitter)

__all__ = [
    "AlgebraicField", "AlgebraicNumberSpec", "Assembly", "ConstructionError", "Gadget", "HypothesisError", "Port",
    "RelationProgram", "StampManifest", "StampResult", "StubArithmeticProvider", "TransmitterSpec", "VisibilitySpec",
    "adapter", "anchor", "anchor_size_lower_bound", "check_hypotheses", "check_relations", "connector",
    "cube_lattice", "cube_polytope", "cube_stamp", "forgetful_transmitter", "full_transmitter",
    "geometric_transmitter", "hypothesis_violations", "lamppost", "normalize_pose", "pentagon_pairs",
    "polygon_forgetful_gadget", "polygon_visibility", "pose_violations", "r_alpha", "rational_anchor_spec",
    "relation_program", "stamp", "tent", "tent_geometric", "transmitter", "validate_provider",
]
