"""Exact arithmetic for the algebra spanned by multiple divisor sum
generating functions: q-series, quasi-shuffle products, the derivation
q d/dq, dimension and relation tables, the modular subalgebra, and the
bridge to multiple zeta values."""

from .numbers import (bernoulli, eulerian_number, eulerian_polynomial,
                      lambda_coeff, count_generators, compositions,
                      compositions_up_to)
from .series import QSeries, eta24
from .brackets import (Composition, canonical_key, multiple_divisor_sum,
                       bracket_series, bracket_series_many,
                       bracket_series_oracle, bracket_series_oracle_many,
                       EulerianKernel, partition_counts,
                       partition_identity_check)
from .words import (WordSum, word, diamond, quasi_shuffle, evaluate,
                    subalgebra_membership, OnePolynomial, decompose_in_one,
                    SUBALGEBRAS)
from .derivation import (DerivativeExpression, Relation, d_len1, d_len2,
                         d_general, d_word_sum, split_relations,
                         leibniz_relations, proven_relation_corpus)
from .linalg import (SPACES, TABLE_KINDS, ExactMatrix, IntEchelon,
                     solve_unique, generators, dim_lower_bound,
                     DimensionTable, dimension_table, dims_from_dprime,
                     weight_dims_identity, relation_search,
                     homogeneous_relation_search, relation_in_span,
                     graded_relation_counts, conjecture_series_expansion,
                     conjecture_series_check)
from .modular import (DELTA_PAIRS, DELTA_SCALE, EisensteinSeries, eisenstein,
                      verify_quasi_modular_identities, tau,
                      DeltaRepresentation, delta_representation,
                      delta_representations, delta_affine_combination,
                      representation_span_rank, deltal2_word_sum,
                      deltal2_check, tau_congruence)
from .zeta import (MzvValue, mzv, mzv_oracle, ZImage, Z_k_symbolic,
                   ZPolynomial, Z_k_alg, LimitEstimate, limit_diagnostic,
                   modified_qzeta, coefficient_growth_report)
from .config import Config, load_config, get_config, set_config
from .checks import REGISTRY, CheckResult, first_failure, run_suite

__all__ = [
    "bernoulli", "eulerian_number", "eulerian_polynomial", "lambda_coeff",
    "count_generators", "compositions", "compositions_up_to",
    "QSeries", "eta24",
    "Composition", "canonical_key", "multiple_divisor_sum",
    "bracket_series", "bracket_series_many",
    "bracket_series_oracle", "bracket_series_oracle_many",
    "EulerianKernel", "partition_counts", "partition_identity_check",
    "WordSum", "word", "diamond", "quasi_shuffle", "evaluate",
    "subalgebra_membership", "OnePolynomial", "decompose_in_one",
    "SUBALGEBRAS",
    "DerivativeExpression", "Relation", "d_len1", "d_len2", "d_general",
    "d_word_sum", "split_relations", "leibniz_relations",
    "proven_relation_corpus",
    "SPACES", "TABLE_KINDS", "ExactMatrix", "IntEchelon", "solve_unique",
    "generators", "dim_lower_bound", "DimensionTable", "dimension_table",
    "dims_from_dprime", "weight_dims_identity", "relation_search",
    "homogeneous_relation_search", "relation_in_span",
    "graded_relation_counts", "conjecture_series_expansion",
    "conjecture_series_check",
    "DELTA_PAIRS", "DELTA_SCALE", "EisensteinSeries", "eisenstein",
    "verify_quasi_modular_identities", "tau", "DeltaRepresentation",
    "delta_representation", "delta_representations",
    "delta_affine_combination", "representation_span_rank",
    "deltal2_word_sum", "deltal2_check", "tau_congruence",
    "MzvValue", "mzv", "mzv_oracle", "ZImage", "Z_k_symbolic", "ZPolynomial",
    "Z_k_alg", "LimitEstimate", "limit_diagnostic", "modified_qzeta",
    "coefficient_growth_report",
    "Config", "load_config", "get_config", "set_config",
    "REGISTRY", "CheckResult", "first_failure", "run_suite",
]
