"""Exact derivation spaces and outer-derivation certificates for Lie algebras."""

__version__ = "0.1.0"

from .catalog import FamilyId, random_spec, restrict_selection, spec_of  # noqa: E402
from .dercalc import (  # noqa: E402
    Derivation,
    OuterCertificate,
    derivation_space,
    find_outer_derivation,
    inner_derivation_space,
    is_inner,
    outer_dimension,
)
from .liecore import LieAlgebra, center, generator_count, is_nilpotent, is_solvable  # noqa: E402
from .maxrank import (  # noqa: E402
    MaxRankSpec,
    build_nilradical,
    build_solvable,
    construct_outer,
    verify_theorem,
)

__all__ = [
    "Derivation",
    "FamilyId",
    "LieAlgebra",
    "MaxRankSpec",
    "OuterCertificate",
    "build_nilradical",
    "build_solvable",
    "center",
    "construct_outer",
    "derivation_space",
    "find_outer_derivation",
    "generator_count",
    "inner_derivation_space",
    "is_inner",
    "is_nilpotent",
    "is_solvable",
    "outer_dimension",
    "random_spec",
    "restrict_selection",
    "spec_of",
    "verify_theorem",
]
