"""Finite cycle sets and involutive set-theoretic Yang-Baxter solutions.

Construction, validation, retraction analysis, solution conversion,
isomorphism testing, exhaustive enumeration and classification for finite
cycle sets, with an independent brute-force oracle cross-checking the
parameterized classification routes.
"""

from .classify import (
    AUTO_CROSS_CHECK_MAX,
    ClassEntry,
    ClassificationReport,
    SearchConfig,
    abelian_templates,
    brute_force_enumerate,
    classify_cyclic_prime_power,
    classify_pq,
    dedupe_by_isomorphism,
    enumerate_specs,
    group_type_of,
)
from .construct import (
    CyclicBuildSpec,
    DynamicalCocycle,
    build_elementary_abelian,
    build_p2_level2,
    build_prime_power,
    compatible_bijections,
    dynamical_extension,
    exponent_symmetry_check,
    extract_spec,
    mixed_radix_digits,
    mixed_radix_value,
    phi_injectivity_check,
    sigma_exponents,
    trivial_cycle_set,
    validate_cocycle,
    validate_spec,
)
from .cycleset import (
    CycleSet,
    RetractionStep,
    Solution,
    are_isomorphic,
    f_invariant,
    find_violations,
    from_solution,
    is_indecomposable,
    is_nondegenerate,
    is_square_free,
    mpl,
    permutation_group,
    relabel,
    retract,
    retraction_tower,
    retraction_tower_sizes,
    squaring_map,
    to_solution,
    validate,
    validate_solution,
)
from .errors import (
    BudgetExceeded,
    CocycleError,
    CycleSetError,
    FormatError,
    HypothesesError,
    InvalidCycleSet,
    OracleDisagreement,
    RetractionError,
    SolutionError,
    SpecError,
    TableError,
)
from .perm import (
    PermGroup,
    Permutation,
    discrete_log,
    format_cycles,
    format_oneline,
    generate_group,
    is_abelian,
    is_cyclic,
    is_transitive,
    order_of,
    parse_permutation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
