"""Chains of p-subgroups up to conjugacy, with their stabilizers."""
from __future__ import annotations

from dataclasses import dataclass

from .config import CapExceeded, caps
from .groups import Group, all_subgroups, conj_set, normalizer, orbit_stabilizer, subgroups_up_to_conjugacy

KINDS = ("all", "normal", "elementary")


@dataclass(frozen=True)
class Chain:
    """1 = X_0 < X_1 < ... < X_m, stored as element sets, with I(sigma) = stabilizer."""

    terms: tuple
    stabilizer: Group

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    @property
    def top(self) -> frozenset:
        return self.terms[-1]


def is_elementary_abelian(G: Group, S: frozenset, p: int) -> bool:
    b = G.backing
    e = b.identity()
    elems = list(S)
    for x in elems:
        y = e
        for _ in range(p):
            y = b.mul(y, x)
        if y != e:
            return False
    gens = G.subgroup_from_elements(S).generators
    return all(b.mul(x, y) == b.mul(y, x) for x in gens for y in gens)


def _is_normal_in(G: Group, Y: frozenset, X: frozenset, xgens) -> bool:
    return all(conj_set(G, g, Y) == Y for g in xgens)


def _strict_chains(lattice: list[frozenset], bottom: frozenset, top: frozenset) -> list[tuple]:
    above = {Y: [Z for Z in lattice if Y < Z] for Y in lattice}
    out = []

    def walk(path):
        last = path[-1]
        if last == top:
            out.append(tuple(path))
            return
        for Z in above[last]:
            walk(path + [Z])

    walk([bottom])
    return out


def conj_chain(G: Group, g, chain: tuple) -> tuple:
    return tuple(conj_set(G, g, T) for T in chain)


def chains_with_top(H: Group, X: Group, p: int, kind: str) -> list[tuple]:
    """All chains 1 < ... < X inside X (normal in X unless ``kind == 'all'``)."""
    lattice = all_subgroups(X, p)
    if kind != "all":
        xg = X.generators
        lattice = [Y for Y in lattice if _is_normal_in(H, Y, X.element_set, xg)]
    trivial = frozenset([H.identity])
    if X.order == 1:
        return [(trivial,)]
    return _strict_chains(lattice, trivial, X.element_set)


def p_chains(H: Group, p: int, kind: str = "normal") -> list[Chain]:
    """Representatives of H-orbits of p-subgroup chains starting at 1.

    ``kind`` is "all", "normal" (every term normal in the top) or
    "elementary" (normal chains with elementary abelian top).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown chain kind {kind!r}")
    out: list[Chain] = []
    for X in subgroups_up_to_conjugacy(H, p=p):
        if X.order > caps.subgroups:
            raise CapExceeded("p-subgroup too large for chain enumeration")
        if kind == "elementary" and not is_elementary_abelian(H, X.element_set, p):
            continue
        N = normalizer(H, X) if X.order > 1 else H
        act = lambda g, ch: conj_chain(H, g, ch)  # noqa: E731
        seen: set = set()
        for ch in sorted(chains_with_top(H, X, p, kind), key=lambda c: [tuple(sorted(t)) for t in c]):
            if ch in seen:
                continue
            orbit, stab = orbit_stabilizer(N, ch, act)
            seen.update(orbit)
            stab.parent = H
            out.append(Chain(ch, stab))
    return out


def expand_chains(H: Group, reps: list[Chain]) -> list[tuple]:
    """Every chain in the H-orbits of the given representatives."""
    out = []
    for c in reps:
        out.extend(orbit_stabilizer(H, c.terms, lambda g, ch: conj_chain(H, g, ch), stabilizer=False)[0])
    return out
