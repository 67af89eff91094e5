"""Computable reductions from Ramsey-type theorems to well-ordering principles.

Descending sequences in ordinal-notation term spaces are turned into
colorings; homogeneous witnesses for those colorings are turned back into
descending sequences in the base order.  The harness runs the round trip
at desk scale and verifies every contract along the way.
"""

from .colorings import (
    STAR,
    BaseColor,
    ColoringInstance,
    HColor,
    color_large,
    color_triple,
    color_tuple,
    comparing_exponent_sequence,
    decode_color,
    encode_color,
    is_exactly_large,
    num_colors,
    vw_vectors,
)
from .epsilon_terms import (
    BELOW_EPSILON_ZERO,
    NO_EXPONENT,
    ZERO_MONOMIAL,
    EpsilonOf,
    EpsilonSpace,
    EpsilonTerm,
    OmegaPow,
    b,
    epsilon_compare,
    epsilon_delta,
    epsilon_exponent,
    epsilon_lh,
    epsilon_term_at,
    eps,
    eterm,
    ht,
)
from .extraction import (
    HomogeneousWitness,
    extract_epsilon_b_path,
    extract_large,
    extract_rt3,
    extract_rtn,
    subterm_check,
    witness_holds,
)
from .harness import (
    PipelineConfig,
    find_homogeneous,
    gen_instance,
    run_pipeline,
    trace_to_json,
    verify_trace_text,
)
from .hindman import (
    BlockSequence,
    BoundFunction,
    Exhausted,
    FlattenedInstance,
    build_f,
    check_property_p,
    decreaser_of,
    extract_hindman,
    find_monochromatic_blocks,
    flatten,
    g_color,
    important_in,
    lemma_decreasible_check,
)
from .omega_terms import (
    CnfOrdinal,
    DeltaResult,
    OmegaSpace,
    OmegaTerm,
    cnf_ordinal_oracle,
    compare_lex,
    delta,
    exponent,
    lh,
    nest,
    term,
)
from .orders import (
    DescendingSequence,
    LinearOrder,
    Ordering,
    Verdict,
    builtin_order,
    compare,
    verify_descending,
)

__version__ = "0.1.0"
