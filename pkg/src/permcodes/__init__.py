"""Permutation codes, repetition codes and twisted permutation codes from finite groups."""

from .codes import (
    Code,
    DistanceDistribution,
    NontrivialKernel,
    delta_rep_lower_bound,
    distance_invariance_check,
    hamming_distance,
    inner_distribution,
    min_distance_bruteforce,
    min_distance_via_supports,
    passive_form,
    permutation_code,
    repetition_code,
    twisted_code,
)
from .groups import (
    CosetDecomposition,
    FiniteGroup,
    GroupTooLarge,
    IncompleteSearch,
    alternating_group,
    complement_classes,
    coset_action,
    normalizer_in_symmetric,
    representations_equivalent,
    subgroups_of_order,
    symmetric_group,
)
from .perm import Permutation, compose, cycle_type, inverse, order, support
from .reps import (
    Representation,
    RepresentationTuple,
    kernel,
    minimal_degree,
    support_profile,
    tuple_kernel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
