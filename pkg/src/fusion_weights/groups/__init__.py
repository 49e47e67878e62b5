"""Exact finite-group engine."""
from .actions import GroupAction
from .backings import BackingError, HeisenbergBacking, Mat2Backing, PermBacking, power
from .core import (
    Group,
    GroupTooLarge,
    Quotient,
    SubgroupBuilder,
    center,
    centralizer,
    centralizer_of_subgroup,
    conj_set,
    conjugates,
    derived_subgroup,
    frattini_subgroup,
    generate_group,
    intersection,
    is_normal,
    join,
    normalizer,
    orbit_stabilizer,
    p_core,
    p_part,
    p_regular_class_count,
    quotient_group,
    sylow_subgroup,
    valuation,
)
from .io import (
    GroupInputError,
    alternating_group,
    cyclic_group,
    dihedral_group,
    extraspecial,
    gl2,
    group_from_dict,
    load_group,
    primitive_root,
    regular_permutation_group,
    semidirect_cyclic,
    sl2,
    symmetric_group,
)
from .subgroups import all_subgroups, as_group, generated, subgroups_of_order, subgroups_up_to_conjugacy
