"""Alternating orbit sums: w, w*, m, m*, k, the chain-model sums and the conjecture checks."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

from .chains import Chain, expand_chains, is_elementary_abelian, p_chains
from .fusion import GroupRealized, LocalData
from .groups import (
    Group,
    GroupAction,
    center,
    centralizer,
    centralizer_of_subgroup,
    conj_set,
    derived_subgroup,
    frattini_subgroup,
    intersection,
    join,
    orbit_stabilizer,
    p_core,
    quotient_group,
    valuation,
)
from .modular import ZEvaluator, character_degrees, ell_count, irr_with_defects


# --- per-Q sums ---------------------------------------------------------------

def chains_of(ld: LocalData, p: int, kind: str = "normal") -> list[Chain]:
    cache = ld.__dict__.setdefault("_chains", {})
    if kind not in cache:
        cache[kind] = p_chains(ld.out, p, kind)
    return cache[kind]


def orbit_sum(H: Group, act: Callable, points, zeval: Callable[[Group], int]) -> int:
    """Sum of z(stabilizer) over H-orbit representatives of ``points``."""
    seen: set = set()
    total = 0
    for pt in points:
        if pt in seen:
            continue
        orbit, stab = orbit_stabilizer(H, pt, act)
        seen.update(orbit)
        total += zeval(stab)
    return total


def wQ_star(ld: LocalData, p: int, zeval: Callable, kind: str = "normal") -> int:
    """Alternating sum over (chain, class of Q) orbit pairs."""
    points = ld.classes.points
    return sum(c.sign * orbit_sum(c.stabilizer, ld.classes.act, points, zeval) for c in chains_of(ld, p, kind))


def wQ_d(ld: LocalData, p: int, d: int, zeval: Callable, kind: str = "normal") -> int:
    """Alternating sum over (chain, character of defect d) orbit pairs."""
    points = ld.irr.indices_of_defect(d)
    if not points:
        return 0
    return sum(c.sign * orbit_sum(c.stabilizer, ld.irr_action.act, points, zeval) for c in chains_of(ld, p, kind))


def wQ(ld: LocalData, p: int, zeval: Callable, kind: str = "normal") -> int:
    points = range(len(ld.irr))
    return sum(c.sign * orbit_sum(c.stabilizer, ld.irr_action.act, points, zeval) for c in chains_of(ld, p, kind))


def reindex_sums(ld: LocalData, p: int, zeval: Callable, side: str = "classes") -> dict[str, int]:
    """The alternating sum three ways: chains outermost, points outermost, pair orbits."""
    action = ld.classes if side == "classes" else ld.irr_action
    out = ld.out
    act = action.act
    points = action.points
    reps = chains_of(ld, p)
    chain_first = sum(c.sign * orbit_sum(c.stabilizer, act, points, zeval) for c in reps)
    every = expand_chains(out, reps)
    sign = {ch: (-1) ** (len(ch) - 1) for ch in every}
    chain_act = lambda g, ch: tuple(conj_set(out, g, T) for T in ch)  # noqa: E731
    point_first = 0
    seen: set = set()
    for pt in points:
        if pt in seen:
            continue
        orbit, C = orbit_stabilizer(out, pt, act)
        seen.update(orbit)
        done: set = set()
        for ch in every:
            if ch in done:
                continue
            corb, stab = orbit_stabilizer(C, ch, chain_act)
            done.update(corb)
            point_first += sign[ch] * zeval(stab)
    pair_act = lambda g, pr: (chain_act(g, pr[0]), act(g, pr[1]))  # noqa: E731
    pairs = 0
    done = set()
    for ch in every:
        for pt in points:
            if (ch, pt) in done:
                continue
            orb, stab = orbit_stabilizer(out, (ch, pt), pair_act)
            done.update(orb)
            pairs += sign[ch] * zeval(stab)
    return {"chains_first": chain_first, "points_first": point_first, "pair_orbits": pairs}


# --- global invariants ----------------------------------------------------------

def local_data_of(F) -> list[LocalData]:
    return F.centric_local_data()


def w(F, zeval: ZEvaluator | None = None) -> int:
    zeval = zeval or ZEvaluator(F.p)
    return sum(zeval(ld.out) for ld in local_data_of(F))


def m_star(F, zeval: ZEvaluator | None = None) -> int:
    zeval = zeval or ZEvaluator(F.p)
    return sum(wQ_star(ld, F.p, zeval) for ld in local_data_of(F))


def m_d(F, d: int, zeval: ZEvaluator | None = None) -> int:
    zeval = zeval or ZEvaluator(F.p)
    return sum(wQ_d(ld, F.p, d, zeval) for ld in local_data_of(F))


def m(F, zeval: ZEvaluator | None = None) -> int:
    zeval = zeval or ZEvaluator(F.p)
    return sum(wQ(ld, F.p, zeval) for ld in local_data_of(F))


def k_definition(F: GroupRealized, zeval: ZEvaluator | None = None) -> int:
    """Sum of w(C_F(x)) over fully centralized representatives x."""
    zeval = zeval or ZEvaluator(F.p)
    total = 0
    for x, _ in F.fully_centralized_element_reps():
        total += w(F.centralizer_system(x), zeval)
    return total


def k(F, zeval: ZEvaluator | None = None) -> int:
    zeval = zeval or ZEvaluator(F.p)
    if F.kind == "group":
        return k_definition(F, zeval)
    return F.k_closed_form(zeval)


# --- chain model sums on S --------------------------------------------------------

def section5_sums(F: GroupRealized, zeval: ZEvaluator | None = None) -> dict[str, int]:
    """Sums over pairs (chain of centric subgroups, element of its bottom term) and four filtered subsets."""
    zeval = zeval or ZEvaluator(F.p)
    G = F.G
    sums = dict.fromkeys(("m_star_via_chains", "m_e", "m_circ", "m_e_circ", "m_e_circ_c"), 0)
    for sigma in F.centric_normal_chain_reps():
        Q0, Qm = sigma.terms[0], sigma.terms[-1]
        Q0g, Qmg = F.as_subgroup(Q0), F.as_subgroup(Qm)
        N = sigma.normalizer
        K = join(N, Q0g, sigma.top_centralizer)
        phi = frattini_subgroup(Qmg, F.p).element_set
        elementary = phi <= Q0
        sign = -1 if sigma.length % 2 else 1
        seen: set = set()
        for x in Q0g.elements:
            if x in seen:
                continue
            orbit, Cx = orbit_stabilizer(N, x, G.conj)
            seen.update(orbit)
            H = quotient_group(Cx, intersection(Cx, Cx, K)).group
            term = sign * zeval(H)
            cq = centralizer(Qmg, x).element_set
            circ = cq <= Q0
            centric = F.is_centric_set(join(Qmg, Qmg.subgroup_from_elements(cq), Qmg.subgroup_from_elements(phi)).element_set)
            sums["m_star_via_chains"] += term
            if elementary:
                sums["m_e"] += term
            if circ:
                sums["m_circ"] += term
            if elementary and circ:
                sums["m_e_circ"] += term
                if centric:
                    sums["m_e_circ_c"] += term
    return sums


# --- appendix identity and chain reductions ------------------------------------------

def appendix_identity_check(G: Group, Q: Group, p: int, family: str | None = None) -> dict:
    """Compare sums of l(k C_G([x])) over Q^cl/G and of l(k C_G(mu)) over Irr(Q)/G."""
    if not all(G.conj(g, q) in Q.element_set for g in G.generators for q in Q.generators):
        raise ValueError("Q is not normal in G")
    if not Q.is_p_group(p):
        raise ValueError("Q is not a p-group")
    Q = Q.with_generators()
    classes = Q.conjugacy_classes
    cidx = Q.class_index
    irr = irr_with_defects(Q, p, family or ("abelian" if Q.is_abelian else "general"))
    act_cls = lambda g, i: cidx[G.conj(g, classes[i][0])]  # noqa: E731
    act_irr = lambda g, i: irr.act(lambda x: G.conj(g, x), i)  # noqa: E731
    ell = lambda H: ell_count(H, p)  # noqa: E731
    lhs = orbit_sum(G, act_cls, range(len(classes)), ell)
    rhs = orbit_sum(G, act_irr, range(len(irr)), ell)
    return {"lhs": lhs, "rhs": rhs, "pass": lhs == rhs}


def chain_reduction_crosscheck(H: Group, p: int, f: Callable[[Group], int] | None = None) -> dict:
    """Alternating sums of f(stabilizer) over each of the three chain families."""
    f = f or (lambda K: K.class_count)
    sums = {kind: sum(c.sign * f(c.stabilizer) for c in p_chains(H, p, kind)) for kind in ("all", "normal", "elementary")}
    nontrivial_core = p_core(H, p).order > 1
    ok = len(set(sums.values())) == 1 and (not nontrivial_core or sums["normal"] == 0)
    return {"sums": sums, "p_core_nontrivial": nontrivial_core, "pass": ok}


# --- conjectures ------------------------------------------------------------------

def sectional_rank(S: Group, p: int) -> int:
    """max over subgroups H of S of log_p |H : Phi(H)| (brute force)."""
    from .groups import all_subgroups

    best = 0
    for X in all_subgroups(S, p):
        H = S.subgroup_from_elements(X).with_generators()
        if H.order == 1:
            continue
        best = max(best, valuation(H.order // frattini_subgroup(H, p).order, p))
    return best


def _verdict(lhs, rhs, ok, **extra) -> dict:
    out = {"lhs": lhs, "rhs": rhs, "pass": bool(ok)}
    out.update(extra)
    return out


def conjecture_suite(F, values: dict, S_data: dict) -> dict:
    """Verdicts for the bounds on k, w and the defect-graded counts.

    ``values`` holds w, k and m_by_defect; ``S_data`` holds p, d = log_p|S|,
    whether S is abelian, the sectional rank, cl(S), cl([S,S]) and the
    positive exponents r for which S has a character of degree p^r.
    """
    p, d = S_data["p"], S_data["d"]
    mbd = values["m_by_defect"]
    kk, ww = values["k"], values["w"]
    out = {}
    out["k_le_S"] = _verdict(kk, p**d, kk <= p**d)
    s = S_data["sectional_rank"]
    out["w_le_p_sectional_rank"] = _verdict(ww, p**s, ww <= p**s, sectional_rank=s)
    lowest = min(mbd.values()) if mbd else 0
    out["m_d_nonneg"] = _verdict(lowest, 0, lowest >= 0)
    if S_data["abelian"]:
        others = {dd: v for dd, v in mbd.items() if dd != d and v != 0}
        out["height_zero"] = {"status": "skipped", "reason": "S abelian", "pass": True}
        out["abelian_height_zero"] = _verdict(len(others), 0, not others)
        out["eaton_moreto"] = {"status": "skipped", "reason": "S abelian", "pass": True}
    else:
        nz = sorted(dd for dd, v in mbd.items() if dd != d and v != 0)
        out["height_zero"] = _verdict(nz, "some d' != d with m(d') != 0", bool(nz))
        r = min(S_data["positive_degree_exponents"])
        r2 = next((j for j in range(1, d + 1) if mbd.get(d - j, 0) != 0), None)
        out["eaton_moreto"] = _verdict(r2, r, r2 == r)
    md = mbd.get(d, 0)
    out["malle_navarro_derived"] = _verdict(kk, S_data["cl_derived"] * md, kk <= S_data["cl_derived"] * md)
    out["malle_navarro_classes"] = _verdict(kk, S_data["cl_S"] * ww, kk <= S_data["cl_S"] * ww)
    return out


def s_data_group(S: Group, p: int) -> dict:
    degs = character_degrees(S).multiplicities
    return {
        "p": p,
        "d": valuation(S.order, p),
        "abelian": S.is_abelian,
        "sectional_rank": sectional_rank(S, p),
        "cl_S": S.class_count,
        "cl_derived": derived_subgroup(S).with_generators().class_count,
        "positive_degree_exponents": sorted({valuation(x, p) for x in degs if x > 1}),
    }


# --- report ---------------------------------------------------------------------------

@dataclass
class WeightReport:
    system: str
    p: int
    w: int
    k: int
    m: int
    m_star: int
    m_by_defect: dict
    per_Q: list
    conjectures: dict
    z_provenance: list
    findings: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["m_by_defect"] = {str(dd): v for dd, v in sorted(self.m_by_defect.items())}
        if not self.findings:
            out.pop("findings")
        if not self.checks:
            out.pop("checks")
        return out


def weight_report(F, zeval: ZEvaluator | None = None, s_data: dict | None = None) -> WeightReport:
    zeval = zeval or ZEvaluator(F.p)
    p = F.p
    d_max = valuation(F.S.order, p)
    per_Q = []
    m_by_defect = dict.fromkeys(range(d_max + 1), 0)
    w_total = m_total = m_star_total = 0
    findings = []
    for ld in local_data_of(F):
        z_out = zeval(ld.out)
        ws = wQ_star(ld, p, zeval)
        by_d = {dd: wQ_d(ld, p, dd, zeval) for dd in range(d_max + 1)}
        wq = wQ(ld, p, zeval)
        if wq != sum(by_d.values()):
            raise AssertionError(f"{ld.label}: w_Q differs from the sum over defects")
        w_total += z_out
        m_star_total += ws
        m_total += wq
        for dd, v in by_d.items():
            m_by_defect[dd] += v
        per_Q.append({
            "label": ld.label, "order": ld.order, "centric": ld.is_centric, "radical": ld.is_radical,
            "out_order": ld.out.order, "z_out": z_out, "w_Q": wq, "w_star_Q": ws,
            "w_Q_by_defect": {str(dd): v for dd, v in by_d.items()},
        })
        if wq != ws:
            findings.append(f"w_Q != w*_Q at {ld.label}: {wq} vs {ws}")
    if m_total != m_star_total:
        findings.append(f"m != m*: {m_total} vs {m_star_total}")
    kk = k(F, zeval)
    s_data = s_data or (F.s_data() if hasattr(F, "s_data") else s_data_group(F.S, p))
    values = {"w": w_total, "k": kk, "m_by_defect": m_by_defect}
    conj = conjecture_suite(F, values, s_data)
    return WeightReport(F.name, p, w_total, kk, m_total, m_star_total, m_by_defect, per_Q, conj,
                        list(zeval.provenance), findings)
