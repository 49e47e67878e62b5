"""Subgroup lattices: up to conjugacy, and exhaustively for small p-groups."""
from __future__ import annotations

from typing import Callable

from ..config import CapExceeded, caps
from .backings import power
from .core import Group, SubgroupBuilder, _closure, conj_set, normalizer, orbit_stabilizer


def _extend(G: Group, X: frozenset, xgens: list, x) -> frozenset:
    return frozenset(_closure(G.backing, list(xgens) + [x], seed=X))


def _canonical(orbit) -> frozenset:
    return min(orbit, key=lambda S: tuple(sorted(S)))


def _sort_key(S: frozenset):
    return (len(S), tuple(sorted(S)))


def subgroups_up_to_conjugacy(G: Group, predicate: Callable[[Group], bool] | None = None,
                              p: int | None = None) -> list[Group]:
    """One subgroup per conjugacy class, optionally restricted to p-subgroups.

    Every subgroup K > 1 is generated by one of its maximal subgroups and one
    further element, so extending each class representative by single
    elements reaches every class.  For p-subgroups only extensions by
    p-elements normalizing the current subgroup are needed.
    """
    if p is None and G.order > caps.subgroups:
        raise CapExceeded(f"subgroup enumeration limited to groups of order <= {caps.subgroups}")
    b = G.backing
    act = lambda g, S: conj_set(G, g, S)  # noqa: E731
    trivial = frozenset([G.identity])
    known: dict = {trivial: trivial}
    reps = [trivial]
    queue = [trivial]
    gens_of: dict = {trivial: []}
    while queue:
        X = queue.pop(0)
        if p is not None:
            XG = G.subgroup_from_elements(X)
            pool = normalizer(G, XG).elements if len(X) > 1 else G.elements
            cands = [x for x in pool if x not in X and power(b, x, p) in X]
        else:
            cands = [x for x in G.elements if x not in X]
        for x in cands:
            Y = _extend(G, X, gens_of[X], x)
            if Y in known:
                continue
            orbit, stab = _conjugation_orbit(G, Y, act)
            rep = _canonical(orbit)
            gens_of[rep] = _generators_of(G, rep)
            for Z in orbit:
                known[Z] = rep
            reps.append(rep)
            queue.append(rep)
    reps.sort(key=_sort_key)
    out = [G.subgroup_from_elements(S) for S in reps]
    if predicate is not None:
        out = [H for H in out if predicate(H)]
    return out


def all_subgroups(G: Group, p: int | None = None) -> list[frozenset]:
    """Every subgroup of a small group (as element sets), sorted by order."""
    trivial = frozenset([G.identity])
    seen = {trivial: []}
    queue = [trivial]
    b = G.backing
    while queue:
        X = queue.pop()
        for x in G.elements:
            if x in X:
                continue
            if p is not None and (power(b, x, p) not in X or not _normalizes(G, x, X)):
                continue
            Y = _extend(G, X, seen[X], x)
            if Y not in seen:
                seen[Y] = seen[X] + [x]
                queue.append(Y)
    return sorted(seen, key=_sort_key)


def _conjugation_orbit(G: Group, Y: frozenset, act):
    return orbit_stabilizer(G, Y, act, stabilizer=False)


def _generators_of(G: Group, S: frozenset) -> list:
    return list(G.subgroup_from_elements(S).generators)


def _normalizes(G: Group, x, X: frozenset) -> bool:
    return conj_set(G, x, X) == X


def subgroups_of_order(G: Group, n: int) -> list[frozenset]:
    return [S for S in all_subgroups(G) if len(S) == n]


def as_group(G: Group, S: frozenset, name: str | None = None) -> Group:
    return G.subgroup_from_elements(S, name=name).with_generators()


def generated(G: Group, gens) -> Group:
    builder = SubgroupBuilder(G.backing)
    for g in gens:
        builder.add(g)
    return builder.build(parent=G)
