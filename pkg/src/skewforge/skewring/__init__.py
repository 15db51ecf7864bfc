"""Skew group rings L*M and their G-invariant subrings."""

from .element import (
    InvariantElement,
    SkewElement,
    element_from_json,
    element_to_json,
    is_invariant,
    make_invariant,
    skew_mul,
    support,
    symmetrize,
)
from .ops import (
    IdealClosure,
    apply_f_operator,
    center_membership,
    decompose_bimodule_classes,
    galois_generator_check,
    gamma_candidates,
    ideal_support_closure,
    invariant_mul,
    lattice_semigroup_is_everything,
    noncommute_witness,
    orbit_partition,
    project_component,
    restrict_support,
)
from .setting import Setting, Variable

__all__ = [
    "IdealClosure",
    "InvariantElement",
    "Setting",
    "SkewElement",
    "Variable",
    "apply_f_operator",
    "center_membership",
    "decompose_bimodule_classes",
    "element_from_json",
    "element_to_json",
    "galois_generator_check",
    "gamma_candidates",
    "ideal_support_closure",
    "invariant_mul",
    "is_invariant",
    "lattice_semigroup_is_everything",
    "make_invariant",
    "noncommute_witness",
    "orbit_partition",
    "project_component",
    "restrict_support",
    "skew_mul",
    "support",
    "symmetrize",
]
