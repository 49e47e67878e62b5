import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusion_weights import weights as W
from fusion_weights.catalog import (
    NAMES,
    ROWS,
    CatalogError,
    RVCatalog,
    abelian_invariants,
    agrees_mod_inner,
    class_count_oracle,
    emit_tables,
    eval_expr,
    instantiations,
    mat_apply_dual,
    oracle_group,
    out_of_matrix,
    render_table,
)
from fusion_weights.groups import HeisenbergBacking, cyclic_group, extraspecial, generate_group, PermBacking
from fusion_weights.modular import ZEvaluator

P = 7
invertible = st.tuples(*[st.integers(0, P - 1)] * 4).filter(lambda X: (X[0] * X[3] - X[1] * X[2]) % P)
elements = st.tuples(*[st.integers(0, P - 1)] * 3)


@given(invertible, elements, elements)
def test_out_of_matrix_is_automorphism(X, x, y):
    b = HeisenbergBacking(P)
    phi = out_of_matrix(X, P)
    assert phi(b.mul(x, y)) == b.mul(phi(x), phi(y))


@given(invertible, invertible)
def test_out_of_matrix_composition(X, Y):
    assert agrees_mod_inner(X, Y, P)


@given(invertible, st.tuples(st.integers(0, P - 1), st.integers(0, P - 1)))
def test_dual_action_preserves_pairing(X, u):
    x, y, z, w = X
    for v in ((1, 0), (0, 1), (2, 5)):
        Xv = ((x * v[0] + y * v[1]) % P, (z * v[0] + w * v[1]) % P)
        Xu = mat_apply_dual(X, u, P)
        assert (Xu[0] * Xv[0] + Xu[1] * Xv[1]) % P == (u[0] * v[0] + u[1] * v[1]) % P


def test_out_of_matrix_basics():
    assert all(out_of_matrix((1, 0, 0, 1), 5)(x) == x for x in extraspecial(5).elements)
    w = 3
    assert out_of_matrix((w, 0, 0, 1), 7)((0, 0, 1)) == (0, 0, w)
    with pytest.raises(CatalogError):
        out_of_matrix((1, 2, 2, 4), 7)


def test_row_admissibility():
    assert [r.name for r, _ in instantiations([3])] == ["2F4(2)'", "J4"]
    assert len(instantiations([3, 5, 7, 13])) == len({r.row_id for r in ROWS}) == 19
    assert ("PSL3[3ndiv]", 3) in [(r.row_id, p) for r, p in instantiations([3], every_prime=True)]
    with pytest.raises(CatalogError):
        RVCatalog.named("RV1", 5)
    with pytest.raises(CatalogError):
        RVCatalog.named("Ru", 7)
    assert set(NAMES) >= {"PSL3", "RV1", "RV2:2", "M"}


@pytest.mark.parametrize("row,p", instantiations([3, 5, 7, 11, 13], every_prime=True),
                         ids=lambda v: getattr(v, "row_id", str(v)))
def test_catalog_invariants(row, p):
    F = RVCatalog(row, p)
    z = ZEvaluator(p)
    assert F.outS.order % p
    assert F.l == p - 1
    assert all(F.outS.order % H.order == 0 for _, H in F.linear_orbits())
    assert all(F.is_eligible(i) for i in F.radical_lines)
    assert W.m_star(F, z) == F.k_closed_form(z) == W.m(F, z)
    assert W.w(F, z) <= W.m(F, z)
    faithful = [o for o in F._S_local().irr_action.orbits() if F._S_local().irr.chars[o[0]].defect == 2]
    assert len(faithful) == (p - 1) // F.l


def test_he_linear_stabilizers():
    F = RVCatalog.named("He", 7)
    assert sorted(H.order for _, H in F.linear_orbits()) == [1, 2, 2, 3, 3, 18]


def test_abelian_invariants():
    assert abelian_invariants(cyclic_group(12)) == [12]
    V = generate_group([(1, 0, 2, 3), (0, 1, 3, 2)], PermBacking(4))
    assert abelian_invariants(V) == [2, 2]
    E = extraspecial(3)
    with pytest.raises(ValueError):
        abelian_invariants(E)


def test_eval_expr():
    assert eval_expr("(p-1)*(p+10)//6", p=13) == 46
    with pytest.raises(ValueError):
        eval_expr("__import__('os')", p=7)
    with pytest.raises(ValueError):
        eval_expr("(p+1)//6", p=7)


def test_oracle_hypotheses():
    with pytest.raises(ValueError):
        class_count_oracle(3, 5)
    with pytest.raises(ValueError):
        class_count_oracle(5, 7)
    assert class_count_oracle(1, 7) == 27
    assert oracle_group(1, 5).class_count == class_count_oracle(1, 5)
    assert oracle_group(2, 5).class_count == class_count_oracle(2, 5)


def test_render_formats():
    result = emit_tables([3])
    assert render_table(result, "csv").splitlines()[0] == "p,row,out_star_order,m2,m3,w"
    assert json.loads(render_table(result, "json"))["diffs"] == []
    assert "diffs: 0" in render_table(result, "md")


def test_golden_override(tmp_path, monkeypatch):
    from fusion_weights.catalog.tables import golden_dir, load_golden

    data = load_golden("weights_table.json")
    data["rows"][6]["w"] = "10"
    (tmp_path / "weights_table.json").write_text(json.dumps(data))
    (tmp_path / "stabilizers_table.json").write_text(json.dumps(load_golden("stabilizers_table.json")))
    monkeypatch.setenv("FW_GOLDEN_DIR", str(tmp_path))
    assert golden_dir() == tmp_path
    diffs = emit_tables([3])["diffs"]
    assert len(diffs) == 1 and "w: computed 9, golden 10" in diffs[0]
