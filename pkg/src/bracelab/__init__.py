"""Finite left braces: tables, star series, identity oracles and canonical epimorphisms."""

__version__ = "0.1.0"

from .core import AxiomReport, BraceTable, element_ops, lambda_map, star, trivial_brace, verify_axioms
from .errors import AxiomError, BraceError, ResourceError, StructureError, UsageError
from .parametric import D12, D13, D12Quotient, d12_mul, d12_quotient, d13_brace, d13_mul
from .series import left_series, right_series, smok_class, star_center, upper_central_series, zl
from .substructures import (
    SubsetMask,
    additive_closure,
    enumerate_ideals,
    generated_subbrace,
    is_ideal,
    is_left_ideal,
    quotient,
    star_subgroup,
)
from .theorems import (
    a2_abelian_check,
    build_canonical,
    classify_quotients,
    epi_from_d12,
    epi_from_d13,
    find_generators,
)
