"""Table emission and diffing against golden data, plus the class-count oracles."""
from __future__ import annotations

import ast
import csv
import io
import json
import operator
import os
from collections import Counter
from importlib import resources
from pathlib import Path

from ..groups import Group, Mat2Backing, derived_subgroup, generate_group, primitive_root, quotient_group
from ..modular import ZEvaluator
from .. import weights as W
from .data import ROWS, CatalogRow
from .systems import RVCatalog

GOLDEN_ENV = "FW_GOLDEN_DIR"
TABLE_PRIMES = (3, 5, 7, 13)


# --- golden data ----------------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow}


def eval_expr(expr: str, **env: int) -> int:
    """Evaluate an integer expression in the names of ``env`` (no calls, no attributes)."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.FloorDiv) and a % b:
                raise ValueError(f"{expr!r} is not integral at {env}")
            return _OPS[type(node.op)](a, b)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise ValueError(f"unsupported expression {expr!r}")
    return ev(ast.parse(str(expr), mode="eval"))


def golden_dir() -> Path:
    override = os.environ.get(GOLDEN_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("fusion_weights.catalog") / "golden"))


def load_golden(name: str) -> dict:
    path = golden_dir() / name
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise FileNotFoundError(f"golden data {path} not found (set {GOLDEN_ENV})") from exc


# --- abelian invariants ----------------------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(G: Group) -> list[int]:
    """Invariant factors n_1 | n_2 | ... of an abelian group, read off from element orders."""
    if not G.is_abelian:
        raise ValueError("group is not abelian")
    orders = Counter(G.element_order(x) for x in G.elements)
    primary: list[list[int]] = []
    for q in _prime_factors(G.order):
        # n_k = number of elements killed by q^k; the number of cyclic
        # factors of order >= q^k is log_q(n_k / n_{k-1}).
        counts, k = [1], 1
        while True:
            n_k = sum(c for o, c in orders.items() if (q**k) % o == 0)
            counts.append(n_k)
            if n_k == counts[-2] and k > 1:
                break
            k += 1
        ranks = []
        for i in range(1, len(counts)):
            ratio, r = counts[i] // counts[i - 1], 0
            while ratio > 1:
                ratio //= q
                r += 1
            ranks.append(r)
        exps = []
        for i, r in enumerate(ranks):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            exps.extend([q ** (i + 1)] * (r - nxt))
        primary.append(sorted(exps, reverse=True))
    width = max((len(e) for e in primary), default=0)
    factors = [1] * width
    for exps in primary:
        for i, e in enumerate(exps):
            factors[i] *= e
    return sorted(f for f in factors if f > 1)


def abelianization_invariants(G: Group) -> list[int]:
    return abelian_invariants(quotient_group(G, derived_subgroup(G)).group)


# --- class-count oracles ----------------------------------------------------------------

ORACLE_KINDS = {
    1: "wreath C_{p-1} wr C_2",
    2: "C_{p-1}.C_2",
    3: "index-3 wreath variant",
    4: "index-3 C_{p-1}.C_2 variant",
}


def _oracle_check(kind: int, p: int):
    if kind not in ORACLE_KINDS:
        raise ValueError(f"unknown oracle kind {kind}")
    if kind in (3, 4) and (p - 1) % 3:
        raise ValueError(f"kind {kind} needs 3 | p - 1, not true at p = {p}")


def class_count_oracle(kind: int, p: int) -> int:
    """The closed-form class counts, exactly as stated."""
    _oracle_check(kind, p)
    return {
        1: (p - 1) * (p + 2) // 2,
        2: (p + 5) // 2,
        3: (p - 1) * (p + 8) // 6,
        4: (p + 17) // 2,
    }[kind]


def oracle_group(kind: int, p: int) -> Group:
    _oracle_check(kind, p)
    w = primitive_root(p)
    wi = pow(w, -1, p)
    gens = {
        1: [(w, 0, 0, 1), (1, 0, 0, w), (0, 1, 1, 0)],
        2: [(w, 0, 0, wi), (0, p - 1, 1, 0)],
        3: [(pow(w, 3, p), 0, 0, 1), (w, 0, 0, w), (0, 1, 1, 0)],
        4: [(pow(w, 3, p), 0, 0, pow(wi, 3, p)), (0, p - 1, 1, 0)],
    }[kind]
    return generate_group(gens, Mat2Backing(p), name=f"oracle kind {kind} at p={p}")


def class_count_verify(kind: int, p: int) -> dict:
    stated = class_count_oracle(kind, p)
    G = oracle_group(kind, p)
    actual = G.class_count
    return {"kind": kind, "p": p, "group_order": G.order, "stated": stated, "brute_force": actual,
            "pass": stated == actual}


# --- table rows -----------------------------------------------------------------------

def instantiations(primes, every_prime: bool = False) -> list[tuple[CatalogRow, int]]:
    """(row, p) pairs in table order.

    By default a generic row appears once, at its smallest legal prime >= 5;
    ``every_prime`` instantiates it at every legal prime, including 3.
    """
    primes = sorted(set(primes))
    out = []
    for row in ROWS:
        legal = [p for p in primes if row.admits(p)]
        if not every_prime:
            legal = [p for p in legal if row.condition == "fixed" or p >= 5][:1]
        out.extend((row, p) for p in legal)
    return out


def _golden_row(row_id: str) -> dict:
    for r in load_golden("weights_table.json")["rows"]:
        if r["row"] == row_id:
            return r
    raise KeyError(row_id)


def compute_row(F: RVCatalog, zeval: ZEvaluator | None = None) -> dict:
    """Every weight-table cell for one system, from generator data, with a trace."""
    zeval = zeval or ZEvaluator(F.p)
    p = F.p
    star = F.out_star
    by_d = {d: W.m_d(F, d, zeval) for d in range(4)}
    cell = {
        "row": F.row.row_id, "name": F.name, "p": p,
        "out_star_order": star.order,
        "out_star_abelian": star.is_abelian,
        "out_star_invariants": abelian_invariants(star) if star.is_abelian else None,
        "out_star_abelianization": abelianization_invariants(star),
        "l": F.l,
        "m2": by_d[2], "m3": by_d[3], "w": W.w(F, zeval),
        "m": sum(by_d.values()), "m_star": W.m_star(F, zeval), "k": F.k_closed_form(zeval),
    }
    cell["trace"] = {
        "generators": [list(X) for X in F.generators],
        "out_order": F.outS.order,
        "out_classes": F.outS.class_count,
        "out_star_classes": star.class_count,
        "line_orbits": F.line_orbits,
        "radical_lines": sorted(F.radical_lines),
        "automizer_indices": {str(o[0]): F.automizer_index(o[0]) for o in F.line_orbits if o[0] in F.radical_lines},
        "linear_stabilizers": [[list(u), H.order] for u, H in F.linear_orbits()],
        "class_stabilizers": [[list(v), H.order] for v, H in F.nonradical_class_orbits()],
        "closed_forms": {"m2": F.m_d_closed_form(2, zeval), "m3": F.m_d_closed_form(3, zeval),
                         "w": F.w_closed_form(zeval)},
        "m_by_defect": {str(d): v for d, v in by_d.items()},
    }
    return cell


def diff_row(cell: dict) -> list[str]:
    """Mismatches between a computed row and the golden weight and stabilizer tables."""
    p = cell["p"]
    w_root = primitive_root(p)
    gold = _golden_row(cell["row"])
    ev = lambda e: eval_expr(e, p=p, w=w_root)  # noqa: E731
    diffs = []
    for col in ("m2", "m3", "w"):
        if cell[col] != ev(gold[col]):
            diffs.append(f"{cell['row']} p={p} {col}: computed {cell[col]}, golden {ev(gold[col])}")
        if cell["trace"]["closed_forms"][col] != cell[col]:
            diffs.append(f"{cell['row']} p={p} {col}: closed form {cell['trace']['closed_forms'][col]} "
                         f"vs chain sum {cell[col]}")
    star = gold["out_star"]
    if cell["out_star_order"] != ev(star["order"]):
        diffs.append(f"{cell['row']} p={p} Out* order: computed {cell['out_star_order']}, golden {ev(star['order'])}")
    if "invariants" in star:
        want = sorted(ev(e) for e in star["invariants"] if ev(e) > 1)
        got = cell["out_star_invariants"]
        if got is None or got != want:
            diffs.append(f"{cell['row']} p={p} Out* invariants: computed {got}, golden {want} ({star['label']})")
    if "abelianization" in star:
        want = sorted(ev(e) for e in star["abelianization"])
        if cell["out_star_abelian"] or cell["out_star_abelianization"] != want:
            diffs.append(f"{cell['row']} p={p} Out* abelianization: computed "
                         f"{cell['out_star_abelianization']}, golden {want} ({star['label']})")
    if cell["l"] != p - 1:
        diffs.append(f"{cell['row']} p={p}: l = {cell['l']}, expected p - 1")
    for col in ("m", "m_star"):
        if cell[col] != cell["k"]:
            diffs.append(f"{cell['row']} p={p} {col} = {cell[col]} but k = {cell['k']}")
    if cell["trace"]["m_by_defect"]["0"] or cell["trace"]["m_by_defect"]["1"]:
        diffs.append(f"{cell['row']} p={p}: nonzero m in defect 0 or 1")
    diffs.extend(diff_stabilizers(cell))
    return diffs


def diff_stabilizers(cell: dict) -> list[str]:
    p = cell["p"]
    gold = load_golden("stabilizers_table.json")["rows"][cell["row"]]
    diffs = []
    for key, col in (("linear", "linear_stabilizers"), ("classes", "class_stabilizers")):
        want = Counter(eval_expr(e, p=p) for e in gold[key])
        got = Counter(order for _, order in cell["trace"][col])
        if want != got:
            diffs.append(f"{cell['row']} p={p} stabilizer orders ({key}): computed "
                         f"{sorted(got.elements())}, golden {sorted(want.elements())}")
    return diffs


def transcription_consistent(F: RVCatalog) -> bool:
    """class count of Out_F(S) plus the automizer indices over radical orbits gives w."""
    gold = _golden_row(F.row.row_id)
    total = F.outS.class_count + sum(F.automizer_index(o[0]) for o in F.line_orbits if o[0] in F.radical_lines)
    return total == eval_expr(gold["w"], p=F.p, w=F.w_root)


def emit_tables(primes=TABLE_PRIMES, every_prime: bool = False) -> dict:
    """Compute the weight table at the given primes and diff it against the golden data."""
    rows, diffs = [], []
    for row, p in instantiations(primes, every_prime):
        F = RVCatalog(row, p)
        cell = compute_row(F)
        d = diff_row(cell)
        cell["diffs"] = d
        rows.append(cell)
        diffs.extend(d)
    bullets = []
    golden_bullets = load_golden("weights_table.json")["bullets"]
    for cell in rows:
        b = golden_bullets.get(cell["name"])
        if b and b["p"] == cell["p"] and (cell["m"], cell["w"]) != (b["m"], b["w"]):
            bullets.append(f"{cell['name']}: (m, w) = ({cell['m']}, {cell['w']}), expected ({b['m']}, {b['w']})")
    diffs.extend(bullets)
    return {"primes": sorted(set(primes)), "rows": rows, "diffs": diffs}


# --- rendering ------------------------------------------------------------------------

TABLE_COLUMNS = ("p", "row", "out_star_order", "m2", "m3", "w")


def _plain(cell: dict) -> dict:
    return {c: cell[c] for c in TABLE_COLUMNS}


def render_table(result: dict, fmt: str) -> str:
    rows = [_plain(c) for c in result["rows"]]
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(TABLE_COLUMNS) + " |", "|" + "---|" * len(TABLE_COLUMNS)]
        lines += ["| " + " | ".join(str(r[c]) for c in TABLE_COLUMNS) + " |" for r in rows]
        lines.append("")
        lines.append(f"diffs: {len(result['diffs'])}")
        lines += [f"- {d}" for d in result["diffs"]]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
