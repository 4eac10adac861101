"""Exact class-group and zero-sum factorization calculus."""

__version__ = "0.1.0"

from .abelian import (
    Group,
    GroupElement,
    IntMatrix,
    Projection,
    direct_sum,
    direct_sum_with_embeddings,
    format_element,
    parse_element,
    parse_group,
    quotient,
    smith_normal_form,
)
from .errors import (
    GuardError,
    InvalidElementError,
    InvalidInputError,
    InvalidLocalizationError,
    InvalidSpecError,
    KlabError,
    NeedsBoxError,
    NeedsCapError,
    OutOfHypothesisError,
    SurveyFailureError,
    UnsupportedError,
)
from .krull import (
    OMEGA,
    KrullPresentation,
    MonoidElement,
    PrimeClass,
    dedekind_model,
    localize,
    monoid_length_set,
    transfer,
)
from .lengths import (
    AampWitness,
    DeltaReport,
    DeltaStarReport,
    Factorization,
    HalfFactorialReport,
    LengthReport,
    aamp_check,
    delta_of_monoid,
    delta_star,
    factorizations,
    half_factorial_check,
    length_set,
    length_table,
    max_delta_star_formula,
    min_delta,
    zero_sum_vectors,
)
from .realize import (
    RealizationTask,
    RealizationWitness,
    SurveyReport,
    aamp_survey,
    default_family,
    witness_search,
)
from .zerosum import (
    AtomSet,
    Sequence,
    Support,
    atoms,
    davenport,
    has_proper_zero_subsequence,
    parse_sequence,
    parse_support,
)
