"""Exact commutative-algebra engine for cores of m-primary ideals."""

__version__ = "0.1.0"

from .core import (CoreReport, DeeperCoreReport, ReductionCertificate, core,
                   core_via_colon, deeper_core_sample, explicit_reduction,
                   m_primary_level, random_minimal_reduction)
from .errors import (CompleteIntersectionError, CoreAgreementError,
                     EngineError, HomogeneityError, NotMPrimaryError,
                     ParseError, ReductionSearchError, RingMismatchError,
                     StabilizationError)
from .formulas import (build_conjecture_ideal, conjecture_ring,
                       conjectured_core, conjectured_core_exponents,
                       d1_closed_form_exponents)
from .groebner import (GBStats, GroebnerBasis, Ideal, buchberger,
                       collect_gb_stats, ideal_contains, ideal_equal,
                       ideal_member, krull_dimension, normal_form,
                       truncated_membership_oracle)
from .ideal_ops import (ci_is_radical, ideal_colon, ideal_intersect,
                        ideal_power, ideal_product, ideal_sum,
                        maximal_ideal_power, minimalize_generators,
                        radical_member, unit_ideal, zero_ideal)
from .orders import DEGREVLEX, LEX, MonomialOrder, block_elimination
from .rings import (Polynomial, PrimeField, RationalField, RingContext,
                    format_polynomial, parse_polynomial, ring)

__all__ = [
    "CoreReport", "DeeperCoreReport", "ReductionCertificate", "core",
    "core_via_colon", "deeper_core_sample", "explicit_reduction",
    "m_primary_level", "random_minimal_reduction",
    "CompleteIntersectionError", "CoreAgreementError", "EngineError",
    "HomogeneityError", "NotMPrimaryError", "ParseError",
    "ReductionSearchError", "RingMismatchError", "StabilizationError",
    "build_conjecture_ideal", "conjecture_ring", "conjectured_core",
    "conjectured_core_exponents", "d1_closed_form_exponents",
    "GBStats", "GroebnerBasis", "Ideal", "buchberger", "collect_gb_stats",
    "ideal_contains", "ideal_equal", "ideal_member", "krull_dimension",
    "normal_form", "truncated_membership_oracle",
    "ci_is_radical", "ideal_colon", "ideal_intersect", "ideal_power",
    "ideal_product", "ideal_sum", "maximal_ideal_power",
    "minimalize_generators", "radical_member", "unit_ideal", "zero_ideal",
    "DEGREVLEX", "LEX", "MonomialOrder", "block_elimination",
    "Polynomial", "PrimeField", "RationalField", "RingContext",
    "format_polynomial", "parse_polynomial", "ring",
]
