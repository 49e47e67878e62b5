import pytest

from fusion_weights.fusion import FusionError, GroupRealized
from fusion_weights.groups import p_core, centralizer_of_subgroup, sylow_subgroup, symmetric_group
from fusion_weights.modular import ell_count
from fusion_weights.weights import k, w

from _systems import group


def test_sylow_is_validated():
    G = symmetric_group(4)
    with pytest.raises(FusionError):
        GroupRealized(G, 2, S=sylow_subgroup(G, 3))


def test_s4_centric_radicals():
    F = GroupRealized(symmetric_group(4), 2)
    reps = F.centric_radical_reps()
    # D8 with trivial Out, and V4 with Out = S3.
    assert sorted((ld.order, ld.out.order) for ld in reps) == [(4, 6), (8, 1)]


def test_p_group_is_its_own_system():
    F = GroupRealized(group("D8"), 2)
    assert [ld.order for ld in F.centric_radical_reps()] == [8]
    assert w(F) == 1
    assert k(F) == group("D8").class_count


@pytest.mark.parametrize("name, p", [("S4", 2), ("A4", 2), ("SL2(3)", 2), ("GL2(3)", 2), ("S3", 3), ("C7:C3", 7)])
def test_single_block_groups(name, p):
    # C_G(O_p(G)) <= O_p(G) forces a single p-block, so k and w are the
    # class count and the number of p-regular classes.
    G = group(name)
    O = p_core(G, p)
    assert centralizer_of_subgroup(G, O).element_set <= O.element_set
    F = GroupRealized(G, p)
    assert k(F) == G.class_count
    assert w(F) == ell_count(G, p)


def test_fully_centralized_reps_cover_classes():
    F = GroupRealized(group("GL2(3)"), 2)
    reps = F.fully_centralized_element_reps()
    assert reps[0][0] == F.G.identity
    assert all(F.is_fully_centralized(x) for x, _ in reps)
    outside = next(x for x in F.G.elements if x not in F.S)
    with pytest.raises(FusionError):
        F.centralizer_system(outside)


def test_chain_reps_start_centric():
    F = GroupRealized(group("S4"), 2)
    for sigma in F.centric_normal_chain_reps():
        assert all(F.is_centric_set(T) for T in sigma.terms)
        assert all(a < b for a, b in zip(sigma.terms, sigma.terms[1:]))
