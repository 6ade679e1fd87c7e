"""youngcalc: calculus of Young functions and finite models of ideal spaces.

The package computes generalized inverses, the complementary operation
(phi ominus phi1), Luxemburg norms, fundamental functions, and pointwise
multiplier norms on finite measure models, together with the checking
machinery for the multiplicative inverse relations and the gap construction.
"""

__version__ = "0.1.0"

from .errors import (DomainError, GapSequenceError, InfMinusInfError,
                     NumericError, ValidationError)
from .extreal import INF, is_inf
from .young import (Characteristics, Piece, YoungFunction, delta2,
                    from_json_dict, to_json_dict, validate, validate_or_raise,
                    young_from_samples)
from . import functions
from .conjugation import (OminusOptions, catalog_closed_form,
                          catalog_closed_form_zero, double_ominus_check,
                          ominus, ominus_table, ominus_zero)
from .equivalence import (ArgRange, bridge_product_sum, check_product_relation,
                          degeneracy_links, extend_constants,
                          multiplier_inclusion_predicate)
from .spaces import (CL, FuncProfile, Linf, Lorentz, Lp, Marcinkiewicz,
                     MeasureModel, PowerProfile, StepFunction,
                     cl_modular, fundamental_function, fundamental_profile,
                     indicator, luxemburg_norm, norm, rearrange)
from .multipliers import (certificate_value, conjecture_probe,
                          eta_construction, fundamental_bounds, holder_check,
                          multiplier_norm, predict_multiplier_space,
                          verify_eta_embedding, weighted_linf_refinement)
from .pathology import (GapSequence, build_gap_sequence, build_psi,
                        factorial_generator, verify_pathology)

__all__ = [
    "__version__",
    "DomainError", "GapSequenceError", "InfMinusInfError", "NumericError",
    "ValidationError", "INF", "is_inf",
    "Characteristics", "Piece", "YoungFunction", "delta2", "from_json_dict",
    "to_json_dict", "validate", "validate_or_raise", "young_from_samples",
    "functions",
    "OminusOptions", "catalog_closed_form", "catalog_closed_form_zero",
    "double_ominus_check", "ominus", "ominus_table", "ominus_zero",
    "ArgRange", "bridge_product_sum", "check_product_relation",
    "degeneracy_links", "extend_constants", "multiplier_inclusion_predicate",
    "CL", "FuncProfile", "Linf", "Lorentz", "Lp", "Marcinkiewicz",
    "MeasureModel", "PowerProfile", "StepFunction", "cl_modular",
    "fundamental_function", "fundamental_profile", "indicator",
    "luxemburg_norm", "norm", "rearrange",
    "certificate_value", "conjecture_probe", "eta_construction",
    "fundamental_bounds", "holder_check", "multiplier_norm",
    "predict_multiplier_space", "verify_eta_embedding",
    "weighted_linf_refinement",
    "GapSequence", "build_gap_sequence", "build_psi", "factorial_generator",
    "verify_pathology",
]
