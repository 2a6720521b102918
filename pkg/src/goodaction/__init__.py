"""Good actions on finite groups: decision procedures, towers and exact examples."""
from .config import DEFAULT_BOUNDS, Bounds
from .group_core import Group, Subgroup, Homomorphism, PrimeSet
from .constructors import evaluate, parse_expr
from .action_theory import Action, make_action, is_good, prop23_criterion
from .fitting_towers import fitting_height, fitting_series, find_tower, ell, ell_index

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BOUNDS", "Bounds", "Group", "Subgroup", "Homomorphism", "PrimeSet",
    "evaluate", "parse_expr", "Action", "make_action", "is_good", "prop23_criterion",
    "fitting_height", "fitting_series", "find_tower", "ell", "ell_index",
]
