"""Strong orientations for crossing families and disjoint dijoin packing."""

from .errors import ContractError, PreconditionError, SizeLimitError
from .families import GuardFamily, enumerate_family, is_crossing_family
from .graphs import Digraph, UGraph, WeightedDigraph
from .orientation import GuardedInstance, strong_orient, verify_strong_orientation
from .packing import DijoinPair, is_dijoin, min_dicut_weight, pack_two_dijoins

__all__ = [
    "ContractError", "DijoinPair", "Digraph", "GuardFamily", "GuardedInstance",
    "PreconditionError", "SizeLimitError", "UGraph", "WeightedDigraph",
    "enumerate_family", "is_crossing_family", "is_dijoin", "min_dicut_weight",
    "pack_two_dijoins", "strong_orient", "verify_strong_orientation",
]
