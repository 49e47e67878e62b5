"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""
import time

import pytest

from fusion_weights import weights as W
from fusion_weights.catalog import (
    RVCatalog,
    class_count_verify,
    emit_tables,
    instantiations,
    load_golden,
)
from fusion_weights.fusion import GroupRealized
from fusion_weights.groups import (
    center,
    extraspecial,
    gl2,
    p_core,
    sl2,
    subgroups_up_to_conjugacy,
    sylow_subgroup,
)
from fusion_weights.modular import ZEvaluator, z_rules

from _systems import GROUP_SYSTEMS, group
from conftest import ACCEPTANCE


def record(n, ok, detail):
    oks, details = ACCEPTANCE.setdefault(n, ([], []))
    oks.append(bool(ok))
    details.append(detail)


def catalog_systems():
    return [RVCatalog(row, p) for row, p in instantiations([3, 5, 7, 13], every_prime=True)]


def test_01_weight_table_reproduction():
    start = time.perf_counter()
    result = emit_tables([3, 5, 7, 13], every_prime=True)
    elapsed = time.perf_counter() - start
    distinct = {c["row"] for c in result["rows"]}
    default = emit_tables([3, 5, 7, 13])["rows"]
    ok = not result["diffs"] and len(distinct) == 19 and len(default) == 19 and elapsed < 300
    record(1, ok, f"{len(default)} table rows, {len(result['rows'])} instantiations at p in 3, 5, 7, 13, "
                  f"{len(result['diffs'])} diffs, {elapsed:.1f}s")
    assert ok, result["diffs"]


def test_02_bullets():
    bullets = load_golden("weights_table.json")["bullets"]
    got = {}
    for name, want in bullets.items():
        F = RVCatalog.named(name, want["p"])
        z = ZEvaluator(F.p)
        got[name] = (W.m(F, z), W.w(F, z))
    ok = all(got[n] == (b["m"], b["w"]) for n, b in bullets.items())
    record(2, ok, ", ".join(f"{n} (m, w) = {v}" for n, v in got.items()))
    assert ok


def test_03_m_star_equals_k():
    bad = []
    for F in catalog_systems():
        z = ZEvaluator(F.p)
        if W.m_star(F, z) != F.k_closed_form(z):
            bad.append(repr(F))
    pairs = []
    for name, p in GROUP_SYSTEMS:
        F = GroupRealized(group(name), p)
        z = ZEvaluator(p)
        m_star, k = W.m_star(F, z), W.k_definition(F, z)
        pairs.append(f"{name}@{p}: {m_star}={k}")
        if m_star != k:
            bad.append(f"{name}@{p}")
    ok = not bad
    record(3, ok, f"all catalog systems plus {len(pairs)} group systems; " + ", ".join(pairs[:5]) + ("" if ok else f"; failures {bad}"))
    assert ok, bad


@pytest.mark.parametrize("name,p", GROUP_SYSTEMS, ids=lambda v: str(v))
def test_04_section5_pipeline(name, p):
    F = GroupRealized(group(name), p)
    z = ZEvaluator(p)
    start = time.perf_counter()
    sums = W.section5_sums(F, z)
    k = W.k_definition(F, z)
    elapsed = time.perf_counter() - start
    ok = set(sums.values()) == {k} and (F.S.order > 16 or elapsed < 120)
    record(4, ok, f"{name}@{p}: {sums['m_star_via_chains']}={k}")
    assert ok, (sums, k)


@pytest.mark.parametrize("kind", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [7, 13])
def test_05_class_count_oracles(kind, p):
    r = class_count_verify(kind, p)
    record(5, r["pass"], f"kind {kind} p={p}: formula {r['stated']}, brute force {r['brute_force']}")
    assert r["pass"], r


def test_06_defect_structure():
    bad = []
    for F in catalog_systems():
        z = ZEvaluator(F.p)
        if W.m_d(F, 0, z) or W.m_d(F, 1, z):
            bad.append(f"{F!r}: m(0), m(1) nonzero")
        for ld in F.centric_radical_reps():
            if ld.order == F.p**2 and W.wQ_d(ld, F.p, 2, z) != 0:
                bad.append(f"{F!r} {ld.label}: w_Q(2) nonzero")
    ok = not bad
    record(6, ok, f"{len(catalog_systems())} catalog instantiations" + ("" if ok else f"; {bad}"))
    assert ok, bad


def appendix_pairs():
    S4, A4, SL, GL = group("S4"), group("A4"), group("SL2(3)"), group("GL2(3)")
    HC = group("3^(1+2):2")
    return [
        ("S4", S4, p_core(S4, 2), 2),
        ("A4", A4, p_core(A4, 2), 2),
        ("SL2(3)", SL, p_core(SL, 2), 2),
        ("GL2(3)", GL, p_core(GL, 2), 2),
        ("C7:C3", group("C7:C3"), sylow_subgroup(group("C7:C3"), 7), 7),
        ("S3", group("S3"), sylow_subgroup(group("S3"), 3), 3),
        ("D8", group("D8"), group("D8"), 2),
        ("3^(1+2):2", HC, p_core(HC, 3), 3),
        ("3^(1+2)", extraspecial(3), extraspecial(3), 3),
        ("GL2(3) center", GL, center(GL), 2),
    ]


def test_07_appendix_identity():
    results = []
    for name, G, Q, p in appendix_pairs():
        Q = Q.with_generators()
        family = "abelian" if Q.is_abelian else "extraspecial" if Q.order == p**3 and Q.backing.kind == "heis" else None
        r = W.appendix_identity_check(G, Q, p, family)
        results.append((name, Q.order, r))
    ok = len(results) >= 5 and all(r["pass"] for _, _, r in results)
    record(7, ok, f"{len(results)} pairs; " + ", ".join(f"{n} |Q|={o}: {r['lhs']}={r['rhs']}" for n, o, r in results))
    assert ok


def test_08_z_rule_consistency():
    instances, bad = 0, []
    for name in ("S4", "GL2(3)", "SL2(3)", "A5", "C7:C3", "3^(1+2):2"):
        G = group(name)
        for p in (2, 3, 5, 7):
            if G.order % p:
                continue
            for H in subgroups_up_to_conjugacy(G):
                rules = z_rules(H, p)
                if len(rules) >= 2:
                    instances += 1
                    if len(set(rules.values())) > 1:
                        bad.append((name, p, H.order, rules))
    for G, p in ((gl2(5), 5), (sl2(5), 5), (gl2(7), 7), (sl2(7), 7)):
        rules = z_rules(G, p)
        if len(rules) >= 2:
            instances += 1
            if len(set(rules.values())) > 1:
                bad.append((G.name, p, G.order, rules))
    ok = instances >= 30 and not bad
    record(8, ok, f"{instances} subgroups with two or more applicable rules, {len(bad)} disagreements")
    assert ok, bad


def test_09_chain_reduction():
    ambient = [("S3", 3), ("S4", 2), ("S4", 3), ("A4", 2), ("D8", 2), ("SL2(3)", 2), ("SL2(3)", 3),
               ("GL2(3)", 2), ("GL2(3)", 3), ("C7:C3", 7), ("A5", 2), ("A5", 5), ("D10", 5)]
    results = [(n, p, W.chain_reduction_crosscheck(group(n), p)) for n, p in ambient]
    cored = sum(r["p_core_nontrivial"] for _, _, r in results)
    ok = len(results) >= 10 and all(r["pass"] for _, _, r in results)
    record(9, ok, f"{len(results)} ambient groups ({cored} with nontrivial p-core)")
    assert ok, [r for r in results if not r[2]["pass"]]


def test_10_conjectures():
    bad, bounds = [], {}
    for F in catalog_systems():
        rep = W.weight_report(F)
        if not all(v["pass"] for v in rep.conjectures.values()):
            bad.append(repr(F))
        if F.p == 7:
            c = rep.conjectures
            bounds[F.row.row_id] = (c["k_le_S"]["lhs"], c["k_le_S"]["rhs"],
                                    c["w_le_p_sectional_rank"]["lhs"], c["w_le_p_sectional_rank"]["rhs"])
    kmax = max(v[0] for v in bounds.values())
    wmax = max(v[2] for v in bounds.values())
    ok = not bad and len(bounds) >= 10
    record(10, ok, f"all catalog systems; at p=7 max k = {kmax} <= 343, max w = {wmax} <= 49")
    assert ok, bad
