"""Exact-arithmetic toolkit for p-ary bent functions in odd characteristic.

The package computes Walsh spectra of functions from finite abelian groups
of odd prime exponent into F_p, entirely in the ring of cyclotomic integers
Z[e] with e a primitive p-th root of unity.  On top of the transform sit
classification (bent / regular / weakly regular / dual-bent), a collection
of constructions that combine or produce bent functions, and a searcher for
bent functions whose dual is not bent.
"""

from .cyclo import CycInt, gauss_sum, legendre, root_power
from .field import (
    BUILTIN_MODULI,
    FieldCtx,
    FieldElement,
    FieldError,
    eta,
    make_field,
    poly_is_irreducible,
    trace,
)
from .pfunc import (
    Domain,
    DomainError,
    ExprError,
    FieldPart,
    PFunction,
    VecPart,
    dump_tt,
    from_expr,
    load_tt,
    parse_coefficient,
    random_function,
    save_tt,
    shift_compose,
    zero_function,
)
from .walsh import WalshSpectrum, poisson_check, walsh_fast, walsh_naive
from .bent import (
    NON_WEAKLY_REGULAR,
    NOT_BENT,
    REGULAR,
    WEAKLY_REGULAR,
    ClassReport,
    DualExtractionError,
    Verdict,
    bent_normalizer,
    classify,
    extract_dual,
    is_bent,
    weak_regular_dual_relation,
)
from .constructions import (
    ConstructionError,
    Cor1Result,
    NdCorSpec,
    SdsSpec,
    agw_combine,
    agw_dual,
    agw_walsh_identity,
    cm_bent,
    cor1_family,
    coordinate_product,
    direct_sum,
    evaluate_pair,
    g2_coefficients,
    independent_pairs,
    monomial_bent,
    ndcor_condition_sum,
    ndcor_function,
    sds_dual,
    sds_is_bent_condition,
    sds_walsh_factorization,
    semi_direct_sum,
    sporadic,
    sporadic_claim,
    sporadic_primitive_scan,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_MODULI",
    "ClassReport",
    "ConstructionError",
    "Cor1Result",
    "CycInt",
    "Domain",
    "DomainError",
    "DualExtractionError",
    "ExprError",
    "FieldCtx",
    "FieldElement",
    "FieldError",
    "FieldPart",
    "NdCorSpec",
    "NON_WEAKLY_REGULAR",
    "NOT_BENT",
    "PFunction",
    "REGULAR",
    "SdsSpec",
    "VecPart",
    "Verdict",
    "WalshSpectrum",
    "WEAKLY_REGULAR",
    "agw_combine",
    "agw_dual",
    "agw_walsh_identity",
    "bent_normalizer",
    "classify",
    "cm_bent",
    "cor1_family",
    "coordinate_product",
    "direct_sum",
    "dump_tt",
    "eta",
    "evaluate_pair",
    "extract_dual",
    "from_expr",
    "g2_coefficients",
    "gauss_sum",
    "independent_pairs",
    "is_bent",
    "legendre",
    "load_tt",
    "make_field",
    "monomial_bent",
    "ndcor_condition_sum",
    "ndcor_function",
    "parse_coefficient",
    "poisson_check",
    "poly_is_irreducible",
    "random_function",
    "root_power",
    "save_tt",
    "sds_dual",
    "sds_is_bent_condition",
    "sds_walsh_factorization",
    "semi_direct_sum",
    "shift_compose",
    "sporadic",
    "sporadic_claim",
    "sporadic_primitive_scan",
    "trace",
    "walsh_fast",
    "walsh_naive",
    "weak_regular_dual_relation",
    "zero_function",
]
