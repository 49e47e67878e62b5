import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusion_weights.groups import (
    PermBacking,
    center,
    cyclic_group,
    extraspecial,
    generate_group,
    gl2,
    sl2,
    symmetric_group,
)
from fusion_weights.modular import (
    TRIVIAL,
    CentralExtension,
    UnsupportedError,
    ZEvaluator,
    character_degrees,
    defect_zero_count,
    ell_count,
    irr_extraspecial,
    irr_with_defects,
    z_evaluate,
    z_rules,
)

from _systems import group


def test_degree_multisets():
    assert character_degrees(symmetric_group(4)).as_sorted_list() == [1, 1, 2, 3, 3]
    assert character_degrees(sl2(3)).as_sorted_list() == [1, 1, 1, 2, 2, 2, 3]
    assert character_degrees(gl2(3)).as_sorted_list() == [1, 1, 2, 2, 2, 3, 3, 4]
    degs = character_degrees(extraspecial(5)).as_sorted_list()
    assert degs == [1] * 25 + [5] * 4


@given(st.lists(st.permutations(range(5)).map(tuple), min_size=1, max_size=2))
def test_degrees_sum_of_squares(gens):
    G = generate_group(gens, PermBacking(5))
    degs = character_degrees(G).as_sorted_list()
    assert len(degs) == G.class_count
    assert sum(d * d for d in degs) == G.order
    assert all(G.order % d == 0 for d in degs)


def test_ell_counts():
    assert ell_count(symmetric_group(4), 2) == 2
    assert ell_count(symmetric_group(4), 3) == 4
    assert ell_count(gl2(3), 3) == 6


@pytest.mark.parametrize("G, p, z", [
    (sl2(3), 3, 1), (gl2(3), 3, 2), (gl2(5), 5, 4), (gl2(7), 7, 6), (sl2(5), 5, 1),
    (symmetric_group(4), 2, 0),
])
def test_z_rules_agree(G, p, z):
    rules = z_rules(G, p)
    assert len(rules) >= 2
    assert set(rules.values()) == {z}
    assert z_evaluate(G, p).value == z


def test_defect_zero_against_degrees():
    # Degrees of A5 are 1, 3, 3, 4, 5.
    G = group("A5")
    assert defect_zero_count(G, 2) == 1
    assert defect_zero_count(G, 3) == 2
    assert defect_zero_count(G, 5) == 1
    assert defect_zero_count(symmetric_group(4), 3) == 2


def test_twisted_klein_four():
    Q8 = group("SL2(3)").subgroup_from_elements(
        [x for x in group("SL2(3)").elements if group("SL2(3)").element_order(x) in (1, 2, 4)])
    Z = center(Q8).with_generators()
    cover = Q8.with_generators()
    alpha = CentralExtension(cover, Z, 1)
    V = alpha.projection.group
    assert V.order == 4
    # A nontrivial class on the Klein four-group leaves only the 2-dimensional representation.
    assert z_evaluate(V, 3, alpha).value == 1
    assert z_evaluate(V, 3, CentralExtension(cover, Z, 0)).value == 4
    assert z_evaluate(V, 3, TRIVIAL).value == 4


def test_twisted_unsupported():
    G = sl2(3)
    alpha = CentralExtension(G, center(G).with_generators(), 1)
    with pytest.raises(UnsupportedError):
        z_evaluate(alpha.projection.group, 3, alpha)


def test_evaluator_provenance():
    z = ZEvaluator(3)
    assert z(gl2(3)) == 2
    assert z(gl2(3)) == 2
    assert z(cyclic_group(4)) == 4
    assert len(z.provenance) == 2
    assert set(z.rule_counts()) <= {"p_core", "p_prime", "sl2", "defect_zero"}


def test_irr_defects_and_extraspecial_labels():
    irr = irr_extraspecial(7)
    assert len(irr) == 49 + 6
    assert len(irr.indices_of_defect(3)) == 49
    assert len(irr.indices_of_defect(2)) == 6
    Q = group("D8")
    gen = irr_with_defects(Q, 2, "general")
    assert sorted(c.degree for c in gen.chars) == [1, 1, 1, 1, 2]
    assert sorted(c.defect for c in gen.chars) == [2, 3, 3, 3, 3]
