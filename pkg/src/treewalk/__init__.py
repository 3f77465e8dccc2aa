"""Exact random-walk hitting, joining and meeting times on trees."""

from .families import FamilySpec, generate
from .hitting import hit_formula, hit_oracle, jmax, joining_time, t_bestmeet, t_meet
from .tree import Tree, TreeError, build_tree, canonical_code, from_pruefer, read_tree

__all__ = [
    "FamilySpec",
    "Tree",
    "TreeError",
    "build_tree",
    "canonical_code",
    "from_pruefer",
    "generate",
    "hit_formula",
    "hit_oracle",
    "jmax",
    "joining_time",
    "read_tree",
    "t_bestmeet",
    "t_meet",
]
