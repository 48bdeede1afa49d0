"""Abstract finite groups, abelian structure, and partial automorphisms."""

from .abelian import (
    AbelianAutomorphism,
    AbelianGroup,
    AbelianSubgroup,
    abelian_quotient_subgroup,
    invariant_factors_of,
    invariants_from_order_counts,
    quotient_invariants,
    quotient_order_counts,
)
from .families import (
    FamilyCheck,
    FixingAutomorphism,
    odd_abelian_fixing_automorphism,
    sigma_family_2explosion,
    sigma_tau_cyclic2,
)
from .finite import (
    FINITE_GROUP_CAP,
    FiniteGroup,
    GroupHomomorphism,
    direct_product,
    find_subgroup_isomorphism,
    hom_from_generators,
    identity_hom,
    regular_permutations,
    subgroup_group,
    trivial_group,
)
from .partial import (
    PartialAutomorphism,
    brute_force_extends,
    enumerate_partial_automorphisms,
    evaluate_word,
    validate_partial_automorphism,
)
