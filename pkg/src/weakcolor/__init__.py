"""List colorings of bounded weak diameter via precoloring extension over
tree-decompositions."""

from .bounds import (BoundParams, bound_add_centered, bound_all_centered, bound_fstar,
                     bound_small_extension, bound_torso, bound_tw)
from .colorers import (TorsoOracle, bipartite_apex_oracle, brute_force_torso_oracle,
                       color_bounded_treewidth, color_with_torso_oracle, small_extension_color)
from .decomposition import (ConstructionParams, RootedTreeDecomposition, ValidationReport,
                            torso, validate_construction, validate_tree_decomposition)
from .engine import EngineInstance, EngineStats, LocalColorer, extend_coloring
from .errors import (ClaimViolation, ContractError, DocumentError, EngineInvariantError,
                     InputError, PrecoloringError, TooLargeError, WeakColorError)
from .graph import INFINITE, Graph, coloring_weak_diameter, weak_diameter
from .legitimacy import CenteredWitness, LegitimacyParams, ListAssignment, check_legitimate

__all__ = [
    "BoundParams", "bound_add_centered", "bound_all_centered", "bound_fstar",
    "bound_small_extension", "bound_torso", "bound_tw",
    "TorsoOracle", "bipartite_apex_oracle", "brute_force_torso_oracle",
    "color_bounded_treewidth", "color_with_torso_oracle", "small_extension_color",
    "ConstructionParams", "RootedTreeDecomposition", "ValidationReport", "torso",
    "validate_construction", "validate_tree_decomposition",
    "EngineInstance", "EngineStats", "LocalColorer", "extend_coloring",
    "ClaimViolation", "ContractError", "DocumentError", "EngineInvariantError",
    "InputError", "PrecoloringError", "TooLargeError", "WeakColorError",
    "INFINITE", "Graph", "coloring_weak_diameter", "weak_diameter",
    "CenteredWitness", "LegitimacyParams", "ListAssignment", "check_legitimate",
]
