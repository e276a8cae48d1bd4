"""Exact isometry computations on integer Lorentzian lattices.

Classification of isometries, parabolic translations, bounded exploration of
isometry groups, and the lattice side of rational elliptic surfaces.
"""
from .classify import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    Classification,
    GrowthReport,
    classify,
    growth_probe,
    invariant_isotropic_ray,
    translation_exponent,
)
from .errors import LorentzError
from .groups import GroupReport, GroupSpec, explore, torsion_subgroup_is_finite_check
from .halphen import (
    FiberConfig,
    HalphenModel,
    classieux_matrix,
    crucial_solver,
    generator_basis,
    translation_group_rank,
)
from .lattice import Isometry, Lattice, diagonal_lattice, in_positive_cone, is_isometry, pairing, primitivize, signature
from .translations import (
    Translation,
    TranslationFrame,
    check_ray_proportionality,
    decompose_translation,
    hyperbolic_from_pair,
    make_translation,
)

__all__ = [
    "ELLIPTIC", "HYPERBOLIC", "PARABOLIC", "Classification", "GrowthReport", "classify",
    "growth_probe", "invariant_isotropic_ray", "translation_exponent", "LorentzError",
    "GroupReport", "GroupSpec", "explore", "torsion_subgroup_is_finite_check", "FiberConfig",
    "HalphenModel", "classieux_matrix", "crucial_solver", "generator_basis",
    "translation_group_rank", "Isometry", "Lattice", "diagonal_lattice", "in_positive_cone",
    "is_isometry", "pairing", "primitivize", "signature", "Translation", "TranslationFrame",
    "check_ray_proportionality", "decompose_translation", "hyperbolic_from_pair", "make_translation",
]
