"""Fusion systems realised by groups, and the local data the weight sums consume."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .config import CapExceeded, caps
from .groups import (
    Group,
    GroupAction,
    all_subgroups,
    centralizer,
    centralizer_of_subgroup,
    conj_set,
    join,
    normalizer,
    orbit_stabilizer,
    p_core,
    p_part,
    quotient_group,
    sylow_subgroup,
)
from .modular import LabeledIrrSet, irr_with_defects


class FusionError(ValueError):
    pass


@dataclass
class LocalData:
    """Everything the alternating sums need about one F-class of centric subgroups.

    ``classes`` and ``irr_action`` are actions of ``out`` (= Out_F(Q)) on the
    conjugacy classes of Q and on the indices of ``irr``.
    """

    label: str
    order: int
    out: Group
    classes: GroupAction
    irr: LabeledIrrSet | None
    irr_action: GroupAction | None
    is_centric: bool = True
    is_radical: bool = True
    subgroup: Group | None = None


# Kept as an alias matching the vocabulary used in reports.
CentricReport = LocalData


@dataclass
class ChainRep:
    """A chain Q_0 < ... < Q_m of centric subgroups of S, each normal in Q_m."""

    terms: tuple
    normalizer: Group          # N_G(sigma) = intersection of the N_G(Q_i)
    top_centralizer: Group     # C_G(Q_m)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @cached_property
    def automizer(self):
        """Aut_F(sigma) as N_G(sigma) / C_G(Q_m)."""
        return quotient_group(self.normalizer, self.top_centralizer)


def _key(S: frozenset):
    return (len(S), tuple(sorted(S)))


class GroupRealized:
    """The fusion system F_S(G) of a finite group at a prime p."""

    kind = "group"

    def __init__(self, G: Group, p: int, S: Group | None = None, name: str | None = None):
        self.G = G
        self.p = p
        self.name = name or G.name or "G"
        if S is None:
            S = sylow_subgroup(G, p)
        if not S.element_set <= G.element_set or not S.is_p_group(p) or S.order != p_part(G.order, p):
            raise FusionError("S is not a Sylow p-subgroup of G")
        self.S = S.with_generators()

    def __repr__(self) -> str:
        return f"<GroupRealized {self.name} p={self.p} |S|={self.S.order}>"

    def _check_cap(self):
        if self.S.order > caps.chain_sylow_order:
            raise CapExceeded(f"|S| = {self.S.order} exceeds the cap {caps.chain_sylow_order}")

    # -- subgroups of S and their fusion ------------------------------------

    @cached_property
    def subgroups_of_S(self) -> list[frozenset]:
        self._check_cap()
        return all_subgroups(self.S, self.p)

    @cached_property
    def _fusion(self) -> tuple[list[list[frozenset]], dict]:
        inside = set(self.subgroups_of_S)
        classes: list[list[frozenset]] = []
        class_of: dict = {}
        act = lambda g, X: conj_set(self.G, g, X)  # noqa: E731
        for Y in self.subgroups_of_S:
            if Y in class_of:
                continue
            orbit = orbit_stabilizer(self.G, Y, act, stabilizer=False)[0]
            members = sorted((Z for Z in orbit if Z in inside), key=_key)
            for Z in members:
                class_of[Z] = len(classes)
            classes.append(members)
        return classes, class_of

    def fusion_class(self, Q) -> list[frozenset]:
        classes, class_of = self._fusion
        return classes[class_of[_as_set(Q)]]

    def as_subgroup(self, Q) -> Group:
        if isinstance(Q, Group):
            return Q.with_generators()
        return self.S.subgroup_from_elements(Q).with_generators()

    def representative(self, members: list[frozenset]) -> frozenset:
        """Fully normalized member: largest N_S, ties broken by the canonical order."""
        def score(Z):
            return (-normalizer(self.S, self.as_subgroup(Z)).order, _key(Z))
        return min(members, key=score)

    def is_centric(self, Q) -> bool:
        for Z in self.fusion_class(Q):
            C = centralizer_of_subgroup(self.S, self.as_subgroup(Z))
            if not C.element_set <= Z:
                return False
        return True

    @cached_property
    def _centric_flags(self) -> dict:
        classes, _ = self._fusion
        flags = {}
        for members in classes:
            c = self.is_centric(members[0])
            for Z in members:
                flags[Z] = c
        return flags

    def is_centric_set(self, Q: frozenset) -> bool:
        return self._centric_flags[Q]

    def out_quotient(self, Q):
        Qg = self.as_subgroup(Q)
        N = normalizer(self.G, Qg)
        K = join(N, Qg, centralizer_of_subgroup(self.G, Qg))
        return quotient_group(N, K, name=f"Out_F(Q), |Q|={Qg.order}")

    def is_radical(self, Q) -> bool:
        return p_core(self.out_quotient(Q).group, self.p).order == 1

    @cached_property
    def centric_reps(self) -> list[frozenset]:
        classes, _ = self._fusion
        reps = [self.representative(m) for m in classes if self._centric_flags[m[0]]]
        return sorted(reps, key=lambda Z: (-len(Z), tuple(sorted(Z))))

    def local_data(self, Q, label: str | None = None) -> LocalData:
        Qg = self.as_subgroup(Q)
        quo = self.out_quotient(Qg)
        out = quo.group
        classes = Qg.conjugacy_classes
        cidx = Qg.class_index
        lift = quo.lift
        G = self.G

        def act_class(g, i):
            return cidx[G.conj(lift(g), classes[i][0])]

        class_action = GroupAction(out, range(len(classes)), act_class)
        irr = irr_with_defects(Qg, self.p, "abelian" if Qg.is_abelian else "general")
        perms: dict = {}

        def act_irr(g, i):
            perm = perms.get(g)
            if perm is None:
                h = lift(g)
                perm = irr.permutation(lambda x: G.conj(h, x))
                perms[g] = perm
            return perm[i]

        irr_action = GroupAction(out, range(len(irr)), act_irr)
        centric = self.is_centric(Qg.element_set)
        radical = p_core(out, self.p).order == 1
        return LocalData(label or f"order {Qg.order}", Qg.order, out, class_action, irr, irr_action,
                         centric, radical, Qg)

    def centric_local_data(self) -> list[LocalData]:
        return [self.local_data(Q, f"Q{i} (order {len(Q)})") for i, Q in enumerate(self.centric_reps)]

    def centric_radical_reps(self) -> list[LocalData]:
        return [d for d in self.centric_local_data() if d.is_radical]

    # -- elements -------------------------------------------------------------

    def fully_centralized_element_reps(self) -> list[tuple]:
        """One x per F-class of elements of S, with |C_S(x)| maximal, and C_S(x)."""
        gcls = self.G.class_index
        buckets: dict = {}
        for x in self.S.elements:
            buckets.setdefault(gcls[x], []).append(x)
        out = []
        for members in buckets.values():
            best = min(members, key=lambda x: (-centralizer(self.S, x).order, x))
            out.append((best, centralizer(self.S, best)))
        e = self.G.identity
        out.sort(key=lambda t: (t[0] != e, -t[1].order, t[0]))
        return out

    def is_fully_centralized(self, x) -> bool:
        members = [y for y in self.S.elements if self.G.class_index[y] == self.G.class_index[x]]
        return centralizer(self.S, x).order == max(centralizer(self.S, y).order for y in members)

    def centralizer_system(self, x) -> "GroupRealized":
        if x not in self.S:
            raise FusionError("element is not in S")
        if not self.is_fully_centralized(x):
            raise FusionError("<x> is not fully centralized")
        if x == self.G.identity:
            return self
        return GroupRealized(centralizer(self.G, x), self.p, centralizer(self.S, x), name=f"C({self.name}, x)")

    # -- centric normal chains -------------------------------------------------

    def centric_normal_chain_reps(self) -> list[ChainRep]:
        """Chains of centric subgroups of S, each normal in the top, up to G-conjugacy."""
        self._check_cap()
        G = self.G
        classes, _ = self._fusion
        centric = [Z for Z in self.subgroups_of_S if self._centric_flags[Z]]
        out: list[ChainRep] = []
        tops = sorted((self.representative(m) for m in classes if self._centric_flags[m[0]]), key=_key)
        for X in tops:
            Xg = self.as_subgroup(X)
            NX = normalizer(G, Xg)
            CX = centralizer_of_subgroup(G, Xg)
            inside = [Y for Y in centric if Y <= X and all(conj_set(G, g, Y) == Y for g in Xg.generators)]
            below: dict = {Y: [Z for Z in inside if Z < Y] for Y in inside}
            chains = []

            def walk(path):
                chains.append(tuple(reversed(path)))
                for Z in below[path[-1]]:
                    walk(path + [Z])

            walk([X])
            act = lambda g, ch: tuple(conj_set(G, g, T) for T in ch)  # noqa: E731
            seen: set = set()
            for ch in sorted(chains, key=lambda c: (len(c), [_key(t) for t in c])):
                if ch in seen:
                    continue
                orbit, stab = orbit_stabilizer(NX, ch, act)
                seen.update(orbit)
                stab.parent = G
                out.append(ChainRep(ch, stab, CX))
        return out


def _as_set(Q) -> frozenset:
    return Q.element_set if isinstance(Q, Group) else frozenset(Q)
