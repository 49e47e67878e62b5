import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from fusion_weights.config import CapExceeded, override_caps
from fusion_weights.groups import (
    BackingError,
    GroupAction,
    GroupInputError,
    HeisenbergBacking,
    Mat2Backing,
    PermBacking,
    all_subgroups,
    center,
    centralizer,
    cyclic_group,
    derived_subgroup,
    extraspecial,
    frattini_subgroup,
    generate_group,
    gl2,
    group_from_dict,
    is_normal,
    normalizer,
    orbit_stabilizer,
    p_core,
    quotient_group,
    sl2,
    subgroups_up_to_conjugacy,
    sylow_subgroup,
    symmetric_group,
)

from _systems import group

perms5 = st.permutations(range(5)).map(tuple)


def sympy_group(G):
    return PermutationGroup([Permutation(list(g)) for g in G.generators])


@given(st.lists(perms5, min_size=1, max_size=3))
def test_perm_groups_match_sympy(gens):
    G = generate_group(gens, PermBacking(5))
    H = sympy_group(G)
    assert G.order == H.order()
    assert G.class_count == len(H.conjugacy_classes())


@given(st.lists(perms5, min_size=1, max_size=2), perms5)
def test_class_equation_and_centralizers(gens, x):
    G = generate_group(gens, PermBacking(5))
    assert sum(len(members) for _, members in G.conjugacy_classes) == G.order
    for rep, members in G.conjugacy_classes:
        assert rep == min(members)
    if x in G:
        members = G.conjugacy_classes[G.class_index[x]][1]
        assert G.order == len(members) * centralizer(G, x).order


@given(st.lists(perms5, min_size=1, max_size=2))
def test_orbit_stabilizer_on_points(gens):
    G = generate_group(gens, PermBacking(5))
    orbit, stab = orbit_stabilizer(G, 0, lambda g, i: g[i])
    assert len(orbit) * stab.order == G.order
    assert all(g[0] == 0 for g in stab.elements)


@given(st.tuples(*[st.integers(0, 6)] * 3), st.tuples(*[st.integers(0, 6)] * 3), st.tuples(*[st.integers(0, 6)] * 3))
def test_heisenberg_associative(x, y, z):
    b = HeisenbergBacking(7)
    assert b.mul(b.mul(x, y), z) == b.mul(x, b.mul(y, z))
    assert b.mul(x, b.inv(x)) == b.identity()


def test_heisenberg_presentation():
    b = HeisenbergBacking(5)
    a, be, g = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    comm = b.mul(b.mul(b.inv(a), b.inv(be)), b.mul(a, be))
    assert comm == g
    E = extraspecial(5)
    assert E.order == 125 and E.exponent == 5
    assert center(E).element_set == {(0, 0, t) for t in range(5)}
    assert derived_subgroup(E).order == frattini_subgroup(E, 5).order == 5


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gl2_and_sl2_orders(p):
    assert gl2(p).order == (p * p - 1) * (p * p - p)
    assert sl2(p).order == p * (p * p - 1)


def test_sylow_and_core():
    S4 = symmetric_group(4)
    assert sylow_subgroup(S4, 2).order == 8
    assert sylow_subgroup(S4, 3).order == 3
    assert p_core(S4, 2).order == 4
    assert p_core(S4, 3).order == 1
    G = gl2(7)
    P = sylow_subgroup(G, 7)
    assert normalizer(G, P).order == 252
    assert p_core(G, 7).order == 1


def test_quotient_by_core():
    S4 = symmetric_group(4)
    V = p_core(S4, 2)
    q = quotient_group(S4, V)
    assert q.group.order == 6 and q.group.class_count == 3
    for g in S4.elements[:7]:
        assert q.project(q.lift(q.project(g))) == q.project(g)


def test_subgroup_classes():
    assert len(subgroups_up_to_conjugacy(symmetric_group(4))) == 11
    assert len(subgroups_up_to_conjugacy(gl2(3))) == 16
    assert len(subgroups_up_to_conjugacy(gl2(3), p=2)) == 9
    assert len(all_subgroups(group("D8"), 2)) == 10


def test_normality():
    S4 = symmetric_group(4)
    assert is_normal(S4, p_core(S4, 2))
    assert not is_normal(S4, sylow_subgroup(S4, 3))


def test_action_check():
    G = cyclic_group(6)
    act = GroupAction(G, G.elements, G.mul)
    act.check()
    assert len(act.orbits()) == 1


def test_input_errors():
    with pytest.raises(GroupInputError):
        group_from_dict({"kind": "perm", "degree": 3, "generators": [[1, 2]]})
    with pytest.raises(GroupInputError):
        group_from_dict({"kind": "mat2", "prime": 3, "generators": [[[1, 1], [1, 1]]]})
    with pytest.raises(GroupInputError):
        group_from_dict({"kind": "lie", "generators": [[1]]})
    with pytest.raises(BackingError):
        Mat2Backing(4)
    G = group_from_dict({"kind": "mat2", "prime": 3, "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]})
    assert G.order == 24


def test_group_order_cap():
    with override_caps(group_order=100), pytest.raises(CapExceeded):
        symmetric_group(5).order
