"""Exact computations around the simplicial EHP sequence.

Everything public is reexported here; the command line lives in
:mod:`ehpkit.cli` and runs as ``python -m ehpkit``.
"""

from .localization import LocalInt, LocalizationError, PrimeSet, Z, Z2, least_odd_prime, zp_add, zp_is_unit, zp_mul
from .gw import (
    NONREAL,
    REAL,
    FailsAt,
    FieldClass,
    GWElement,
    Holds,
    gw_add,
    gw_dimension,
    gw_inverse,
    gw_is_unit,
    gw_mul,
    gw_unit_family_holds,
    is_twist,
    twist_class,
    unit_family_element,
)
from .multinomial import (
    FiberedFunction,
    count_even_sign,
    count_even_sign_enumerated,
    cycle_notation,
    enumerate_multinomial,
    enumerate_pair_partitions,
    eo_counts,
    from_cycles,
    gamma,
    gamma_fixed_count,
    inversions,
    is_gamma_fixed,
    least_preimage,
    multinomial_count,
    odd_double_factorial,
    partition_of,
    partition_sign,
    precedes,
    regular_set_permutations,
    sign,
    tilde_permutation,
    to_cycles,
    validate_pair_partition,
)
from .stable import (
    Invertible,
    SphereShape,
    act_on_tuple,
    c_invertible,
    closed_form_diagonal,
    delta2_closed,
    delta_class,
    diagonal_entry,
    diagonal_vector,
    example_james_hopf_perms,
    james_hopf_class,
    perm_sum_matrix,
    single_letter_block,
    wedge_tuples,
)
from .fgab import (
    FGAbError,
    FGAbGroup,
    Homomorphism,
    Lattice,
    Subquotient,
    bareiss,
    determinant,
    hermite_rows,
    homology as group_homology,
    integer_kernel,
    invariant_factors,
    iso_test,
    map_is_injective,
    map_is_surjective,
    rational_rank,
    smith_diagonal,
    smith_normal_form,
    sparse_smith_diagonal,
)
from .specseq import (
    ComparisonReport,
    E1SpectralSequence,
    FilteredComplex,
    FilteredSpectralSequence,
    SpecSeqError,
    SpecSeqMorphism,
    SpectralSequence,
    check_comparison,
    random_comparison_pair,
    random_filtered_complex,
)
from .simplicial import (
    POINT,
    S1,
    S2,
    S2vS2,
    CellSet,
    ChainComplexData,
    HomologyResult,
    SimplicialMap,
    SimplicialSet,
    WordSet,
    boundary_matrix,
    check_simplicial_identities,
    check_simplicial_map,
    homology,
    induced_map,
    sphere,
    wedge_of_spheres,
)
from .james import (
    SPACES,
    Word,
    dn_quotient,
    homology_table,
    inclusion,
    j2_matches_quotient_on_chains,
    james_hopf_j2,
    james_truncated,
    les_exact,
    smash_power,
    two_subsets,
)
from .ehp import (
    Resolution,
    SheafLabel,
    TableParams,
    abutment_label,
    build_table,
    e1_entry,
    morel_zero_stem,
    render_table,
    truncated_e1_entry,
)
from .cli import run

__version__ = "0.1.0"
