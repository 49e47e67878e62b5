from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Hashable, Iterable

from ..config import CapExceeded, caps
from .backings import BackingError, power


class GroupTooLarge(CapExceeded):
    pass


def _closure(backing, gens: Iterable[tuple], seed: Iterable[tuple] = (), cap: int | None = None) -> set:
    gens = list(gens)
    cap = caps.group_order if cap is None else cap
    mul = backing.mul
    seen = set(seed)
    seen.add(backing.identity())
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise GroupTooLarge(f"closure exceeds element cap {cap}")
        frontier = nxt
    return seen


class Group:
    """A finite group given by generators over a backing.

    Elements are materialized lazily and kept sorted, which fixes the
    canonical order used for class and subgroup representatives.
    """

    def __init__(self, backing, gens: Iterable[tuple] = (), elements: Iterable[tuple] | None = None,
                 name: str | None = None, parent: "Group | None" = None):
        self.backing = backing
        ident = backing.identity()
        self.gens = tuple(dict.fromkeys(g for g in gens if g != ident))
        self.name = name
        self.parent = parent
        if elements is not None:
            self.__dict__["element_set"] = frozenset(elements)

    def __repr__(self) -> str:
        label = self.name or f"{self.backing.kind} group"
        return f"<Group {label} order={self.order}>"

    def mul(self, x, y):
        return self.backing.mul(x, y)

    def inv(self, x):
        return self.backing.inv(x)

    @property
    def identity(self):
        return self.backing.identity()

    def conj(self, g, x):
        """g x g^-1"""
        b = self.backing
        return b.mul(b.mul(g, x), b.inv(g))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(_closure(self.backing, self.gens))

    @cached_property
    def elements(self) -> tuple:
        return tuple(sorted(self.element_set))

    @property
    def order(self) -> int:
        return len(self.element_set)

    def __contains__(self, x) -> bool:
        return x in self.element_set

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def generators(self) -> tuple:
        """A small generating set (reconstructed greedily when only elements were given)."""
        if self.gens or self.order == 1:
            return self.gens
        return tuple(_greedy_generators(self.backing, self.elements))

    def with_generators(self) -> "Group":
        if not self.gens and self.order > 1:
            self.gens = self.generators
        return self

    def element_order(self, x) -> int:
        b = self.backing
        e = b.identity()
        n, y = 1, x
        while y != e:
            y = b.mul(y, x)
            n += 1
        return n

    @cached_property
    def exponent(self) -> int:
        out = 1
        for cls in self.conjugacy_classes:
            n = self.element_order(cls[0])
            out = out * n // gcd(out, n)
        return out

    @cached_property
    def is_abelian(self) -> bool:
        g = self.generators
        b = self.backing
        return all(b.mul(x, y) == b.mul(y, x) for i, x in enumerate(g) for y in g[i + 1:])

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_subgroup_of(self, other: "Group") -> bool:
        return self.element_set <= other.element_set

    @cached_property
    def conjugacy_classes(self) -> tuple:
        """Classes as ``(rep, frozenset)``; identity first, then by representative."""
        gens = self.generators
        seen: set = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = [x]
            seen.add(x)
            for y in orbit:
                for g in gens:
                    z = self.conj(g, y)
                    if z not in seen:
                        seen.add(z)
                        orbit.append(z)
            out.append((x, frozenset(orbit)))
        ident = self.identity
        out.sort(key=lambda c: (c[0] != ident, c[0]))
        return tuple(out)

    @cached_property
    def class_index(self) -> dict:
        return {x: i for i, (_, members) in enumerate(self.conjugacy_classes) for x in members}

    @property
    def class_count(self) -> int:
        return len(self.conjugacy_classes)

    def subgroup(self, gens: Iterable[tuple], name: str | None = None) -> "Group":
        return Group(self.backing, gens, name=name, parent=self)

    def subgroup_from_elements(self, elements: Iterable[tuple], name: str | None = None) -> "Group":
        return Group(self.backing, (), elements=elements, name=name, parent=self)


def _greedy_generators(backing, elements) -> list:
    target = len(elements)
    gens: list = []
    current = {backing.identity()}
    # Prefer elements of large order so few generators are needed.
    ranked = sorted(elements, key=lambda x: -_order(backing, x))
    for x in ranked:
        if x in current:
            continue
        gens.append(x)
        current = _closure(backing, gens, seed=current)
        if len(current) == target:
            break
    return gens


def _order(backing, x) -> int:
    e = backing.identity()
    n, y = 1, x
    while y != e:
        y = backing.mul(y, x)
        n += 1
    return n


def generate_group(gens: Iterable[tuple], backing, name: str | None = None) -> Group:
    gens = [backing.validate(g) for g in gens]
    if not gens:
        raise BackingError("at least one generator is required")
    group = Group(backing, gens, name=name)
    group.element_set  # noqa: B018 - force closure so cap errors surface here
    return group


class SubgroupBuilder:
    """Grows a subgroup one generator at a time."""

    def __init__(self, backing):
        self.backing = backing
        self.gens: list = []
        self.elements = {backing.identity()}

    def add(self, x) -> bool:
        if x in self.elements:
            return False
        self.gens.append(x)
        self.elements = _closure(self.backing, self.gens, seed=self.elements)
        return True

    def build(self, parent: Group | None = None, name: str | None = None) -> Group:
        return Group(self.backing, self.gens, elements=self.elements, parent=parent, name=name)


def orbit_stabilizer(G: Group, point: Hashable, act: Callable, stabilizer: bool = True):
    """Orbit of ``point`` under the left action ``act`` and its stabilizer (Schreier generators)."""
    b = G.backing
    gens = G.generators
    trans = {point: b.identity()}
    orbit = [point]
    for y in orbit:
        u = trans[y]
        for s in gens:
            z = act(s, y)
            if z not in trans:
                trans[z] = b.mul(s, u)
                orbit.append(z)
    if not stabilizer:
        return orbit, None
    target = G.order // len(orbit)
    if G.order % len(orbit):
        raise AssertionError("orbit length does not divide the group order; action is not a group action")
    builder = SubgroupBuilder(b)
    if target > 1:
        for y in orbit:
            u = trans[y]
            for s in gens:
                z = act(s, y)
                builder.add(b.mul(b.inv(trans[z]), b.mul(s, u)))
                if len(builder.elements) == target:
                    break
            if len(builder.elements) == target:
                break
    stab = builder.build(parent=G)
    if stab.order != target:
        raise AssertionError("orbit-stabilizer mismatch")
    return orbit, stab


def conj_set(G: Group, g, H: frozenset) -> frozenset:
    b = G.backing
    gi = b.inv(g)
    return frozenset(b.mul(b.mul(g, h), gi) for h in H)


def centralizer(G: Group, x, check: bool = True) -> Group:
    """C_G(x); with ``check=False`` x may lie in an overgroup sharing the backing."""
    if check and x not in G:
        raise ValueError("element is not in the group")
    return orbit_stabilizer(G, x, G.conj)[1]


def centralizer_of_subgroup(G: Group, H: Group) -> Group:
    out = G
    for h in H.generators:
        out = centralizer(out, h, check=False)
        out.parent = G
    return out


def normalizer(G: Group, H: Group) -> Group:
    if not H.element_set <= G.element_set:
        raise ValueError("subgroup is not contained in the group")
    return orbit_stabilizer(G, H.element_set, lambda g, X: conj_set(G, g, X))[1]


def center(G: Group) -> Group:
    return centralizer_of_subgroup(G, G)


def conjugates(G: Group, H: Group) -> list:
    """All G-conjugates of H as frozensets (H first)."""
    return orbit_stabilizer(G, H.element_set, lambda g, X: conj_set(G, g, X), stabilizer=False)[0]


def is_normal(G: Group, N: Group) -> bool:
    S = N.element_set
    return all(G.conj(g, n) in S for g in G.generators for n in N.generators)


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def sylow_subgroup(G: Group, p: int) -> Group:
    target = p_part(G.order, p)
    builder = SubgroupBuilder(G.backing)
    while len(builder.elements) < target:
        P = builder.build(parent=G)
        N = normalizer(G, P) if P.order > 1 else G
        for x in N.elements:
            if x in builder.elements:
                continue
            if power(G.backing, x, p) in builder.elements:
                builder.add(x)
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise AssertionError("failed to enlarge p-subgroup")
    return builder.build(parent=G, name=f"Sylow {p}")


def p_core(G: Group, p: int) -> Group:
    P = sylow_subgroup(G, p)
    if P.order == 1:
        return P
    core = P.element_set
    for X in conjugates(G, P):
        core = core & X
        if len(core) == 1:
            break
    return G.subgroup_from_elements(core, name=f"O_{p}")


def derived_subgroup(G: Group) -> Group:
    b = G.backing
    gens = G.generators
    builder = SubgroupBuilder(b)
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            builder.add(b.mul(b.mul(b.inv(x), b.inv(y)), b.mul(x, y)))
    changed = True
    while changed:
        changed = False
        for d in list(builder.gens):
            for g in gens:
                if builder.add(G.conj(g, d)):
                    changed = True
    return builder.build(parent=G, name="derived")


def frattini_subgroup(Q: Group, p: int) -> Group:
    if not Q.is_p_group(p):
        raise ValueError("Frattini subgroup is only computed for p-groups")
    D = derived_subgroup(Q)
    builder = SubgroupBuilder(Q.backing)
    for d in D.generators:
        builder.add(d)
    for x in Q.elements:
        builder.add(power(Q.backing, x, p))
    return builder.build(parent=Q, name="Frattini")


def join(G: Group, *subgroups: Group) -> Group:
    builder = SubgroupBuilder(G.backing)
    for H in subgroups:
        for h in H.generators:
            builder.add(h)
    return builder.build(parent=G)


def intersection(G: Group, *subgroups: Group) -> Group:
    common = subgroups[0].element_set
    for H in subgroups[1:]:
        common = common & H.element_set
    return G.subgroup_from_elements(common)


def p_regular_class_count(G: Group, p: int) -> int:
    return sum(1 for rep, _ in G.conjugacy_classes if G.element_order(rep) % p)


@dataclass
class Quotient:
    """G/N realised as the regular permutation action on cosets."""

    source: Group
    kernel: Group
    group: Group
    coset_of: dict
    reps: list

    def project(self, g) -> tuple:
        b = self.source.backing
        return tuple(self.coset_of[b.mul(g, r)] for r in self.reps)

    def lift(self, q: tuple):
        # Coset 0 is the kernel, so q sends it to the coset of any preimage.
        return self.reps[q[0]]

    def preimage(self, H: Group) -> Group:
        elems = [x for x in self.source.elements if self.project(x) in H.element_set]
        return self.source.subgroup_from_elements(elems)


def quotient_group(G: Group, N: Group, name: str | None = None) -> Quotient:
    from .backings import PermBacking

    if not is_normal(G, N):
        raise ValueError("quotient by a non-normal subgroup")
    b = G.backing
    coset_of: dict = {}
    reps: list = []
    for g in (G.identity,) + G.elements:
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[b.mul(g, n)] = idx
    n = len(reps)
    qb = PermBacking(n)
    q = Quotient(G, N, None, coset_of, reps)  # type: ignore[arg-type]
    gens = [q.project(g) for g in G.generators]
    elements = {q.project(g) for g in reps}
    q.group = Group(qb, gens, elements=elements, name=name)
    return q
