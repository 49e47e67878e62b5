"""Nonconstrained fusion systems on the extraspecial group p^{1+2}_+."""
from __future__ import annotations

from functools import cached_property

from ..fusion import LocalData
from ..groups import (
    Group,
    GroupAction,
    Mat2Backing,
    extraspecial,
    generate_group,
    orbit_stabilizer,
    power,
    primitive_root,
)
from ..modular import IrrChar, LabeledIrrSet, ZEvaluator, irr_extraspecial
from .data import CatalogRow, find_row


class CatalogError(ValueError):
    pass


# --- the GL_2(p) <-> Out(S) dictionary ----------------------------------------

def out_of_matrix(X: tuple, p: int):
    """The automorphism alpha -> alpha^x beta^z, beta -> alpha^y beta^w, gamma -> gamma^det X."""
    x, y, z, w = (v % p for v in X)
    det = (x * w - y * z) % p
    if det == 0:
        raise CatalogError(f"singular matrix {X} mod {p}")
    from ..groups import HeisenbergBacking

    b = HeisenbergBacking(p)
    a_img = b.mul((x, 0, 0), (0, z, 0))
    b_img = b.mul((y, 0, 0), (0, w, 0))

    def phi(el):
        r, s, t = el
        return b.mul(b.mul(power(b, a_img, r), power(b, b_img, s)), (0, 0, t * det % p))

    return phi


def agrees_mod_inner(X: tuple, Y: tuple, p: int) -> bool:
    """Whether out(XY) and out(X) o out(Y) agree up to an inner automorphism.

    Automorphisms of S that agree on S/Z(S) and on Z(S) differ by a central
    automorphism, and those are inner for p^{1+2}_+.
    """
    XY = mat_mul(X, Y, p)
    f, gx, gy = out_of_matrix(XY, p), out_of_matrix(X, p), out_of_matrix(Y, p)
    for el in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        a, b = f(el), gx(gy(el))
        if a[:2] != b[:2] or (el == (0, 0, 1) and a != b):
            return False
    return True


def mat_mul(X: tuple, Y: tuple, p: int) -> tuple:
    a, b, c, d = X
    e, f, g, h = Y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def mat_apply(X: tuple, v: tuple, p: int) -> tuple:
    x, y, z, w = X
    return ((x * v[0] + y * v[1]) % p, (z * v[0] + w * v[1]) % p)


def mat_apply_dual(X: tuple, u: tuple, p: int) -> tuple:
    """u -> X^-T u."""
    x, y, z, w = X
    di = pow((x * w - y * z) % p, -1, p)
    return ((w * u[0] - z * u[1]) * di % p, (-y * u[0] + x * u[1]) * di % p)


def line_vector(i: int, p: int) -> tuple:
    return (1, i) if i < p else (0, 1)


def line_of(v: tuple, p: int) -> int:
    if v[0] % p:
        return v[1] * pow(v[0], -1, p) % p
    return p


def det(X: tuple, p: int) -> int:
    return (X[0] * X[3] - X[1] * X[2]) % p


def cyclic_subgroup_of_units(values, p: int) -> list[int]:
    """The subgroup of F_p^x generated by ``values``, sorted."""
    out = {1}
    frontier = [1]
    gens = {v % p for v in values}
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = a * g % p
                if c not in out:
                    out.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(out)


def vector_irr(p: int) -> LabeledIrrSet:
    """Irr of an elementary abelian group of order p^2 in coordinates; matrices act by X^-T."""
    chars = [IrrChar((u, v), 1, 2) for u in range(p) for v in range(p)]
    index = {c.label: i for i, c in enumerate(chars)}

    def act(X, i):
        return index[mat_apply_dual(X, chars[i].label, p)]

    return LabeledIrrSet(chars, p * p, p, "abelian", act)


class RVCatalog:
    """A catalog fusion system, described by Out_F(S) and its radical lines."""

    kind = "rv"

    def __init__(self, row: CatalogRow, p: int):
        if not row.admits(p):
            raise CatalogError(f"{row.name} is not defined at p = {p}")
        self.row = row
        self.p = p
        self.w_root = primitive_root(p)
        self.name = row.name
        self.generators = [tuple(v % p for v in X) for X in row.generators(p, self.w_root)]
        self.outS = generate_group(self.generators, Mat2Backing(p), name=f"Out_F(S) {row.row_id}")
        if self.outS.order % p == 0:
            raise CatalogError("Out_F(S) must have order prime to p")
        self.radical_line_reps = tuple(row.radical_lines(p))

    @classmethod
    def named(cls, name: str, p: int) -> "RVCatalog":
        try:
            return cls(find_row(name, p), p)
        except KeyError as exc:
            raise CatalogError(str(exc.args[0])) from exc

    def __repr__(self) -> str:
        return f"<RVCatalog {self.row.row_id} p={self.p}>"

    @cached_property
    def S(self) -> Group:
        return extraspecial(self.p)

    # -- lines ------------------------------------------------------------------

    def act_line(self, X, i):
        return line_of(mat_apply(X, line_vector(i, self.p), self.p), self.p)

    @cached_property
    def line_orbits(self) -> list[list[int]]:
        return GroupAction(self.outS, range(self.p + 1), self.act_line).orbits()

    @cached_property
    def radical_lines(self) -> set:
        out = set()
        for orb in self.line_orbits:
            if any(i in orb for i in self.radical_line_reps):
                out.update(orb)
        return out

    def line_stabilizer(self, i: int) -> Group:
        return orbit_stabilizer(self.outS, i, self.act_line)[1]

    def line_pairs(self, i: int) -> set:
        """(lambda, det X) for X in the stabilizer of line i, with X v_i = lambda v_i."""
        p = self.p
        v = line_vector(i, p)
        out = set()
        for X in self.line_stabilizer(i).elements:
            img = mat_apply(X, v, p)
            lam = img[0] * pow(v[0], -1, p) % p if v[0] else img[1] * pow(v[1], -1, p) % p
            out.add((lam, det(X, p)))
        return out

    def is_eligible(self, i: int) -> bool:
        """Whether the Borel subgroup of SL_2(p) on Q_i is induced by Out_F(S)."""
        pairs = self.line_pairs(i)
        return all((t, pow(t, -1, self.p)) in pairs for t in range(1, self.p))

    def automizer_index(self, i: int) -> int:
        """|Aut_F(Q_i) : SL_2(p)|, the size of the determinant group of the restrictions."""
        return len(self.determinant_group(i))

    def determinant_group(self, i: int) -> list[int]:
        return cyclic_subgroup_of_units([lam * d for lam, d in self.line_pairs(i)], self.p)

    def aut_Q(self, i: int) -> Group:
        """Aut_F(Q_i) in the basis (x_i, gamma), x_i a preimage of the line vector."""
        p = self.p
        b = Mat2Backing(p)
        if i in self.radical_lines:
            if not self.is_eligible(i):
                raise CatalogError(f"line {i} cannot carry a radical: Borel condition fails")
            D = self.determinant_group(i)
            gens = [(1, 1, 0, 1), (1, 0, 1, 1)] + [(dd, 0, 0, 1) for dd in D if dd != 1]
            return generate_group(gens, b, name=f"Aut_F(Q_{i})")
        # Restrictions of the line stabilizer plus the inner automorphisms from S.
        gens = [(1, 0, 1, 1)] + [(lam, 0, 0, dd) for lam, dd in self.line_pairs(i)]
        return generate_group(gens, b, name=f"Aut_F(Q_{i})")

    # -- local data -----------------------------------------------------------------

    def _S_local(self) -> LocalData:
        p = self.p
        S = self.S
        classes = S.conjugacy_classes
        cidx = S.class_index
        phis: dict = {}

        def act_class(X, j):
            phi = phis.get(X)
            if phi is None:
                phi = phis[X] = out_of_matrix(X, p)
            return cidx[phi(classes[j][0])]

        irr = irr_extraspecial(p)
        return LocalData("S", p**3, self.outS, GroupAction(self.outS, range(len(classes)), act_class),
                         irr, GroupAction(self.outS, range(len(irr)), irr.act), True, True, S)

    def _Q_local(self, i: int) -> LocalData:
        p = self.p
        A = self.aut_Q(i)
        points = [(a, c) for a in range(p) for c in range(p)]
        irr = vector_irr(p)
        radical = i in self.radical_lines
        return LocalData(f"Q_{i}", p * p, A, GroupAction(A, points, lambda X, v: mat_apply(X, v, p)),
                         irr, GroupAction(A, range(len(irr)), irr.act), True, radical)

    def centric_local_data(self) -> list[LocalData]:
        """S and one Q_i per Out_F(S)-orbit of lines (all Q_i are centric)."""
        return [self._S_local()] + [self._Q_local(orb[0]) for orb in self.line_orbits]

    def centric_radical_reps(self) -> list[LocalData]:
        return [ld for ld in self.centric_local_data() if ld.is_radical]

    # -- closed forms -------------------------------------------------------------------

    @cached_property
    def out_star(self) -> Group:
        return self.outS.subgroup_from_elements(
            [X for X in self.outS.elements if det(X, self.p) == 1], name="Out*_F(S)").with_generators()

    @property
    def l(self) -> int:
        return self.outS.order // self.out_star.order

    def linear_orbits(self) -> list[tuple]:
        """(rep label, stabilizer) for Out_F(S) acting on the labels of linear characters."""
        p = self.p
        act = lambda X, u: mat_apply_dual(X, u, p)  # noqa: E731
        labels = [(u, v) for u in range(p) for v in range(p)]
        return [(orb[0], orbit_stabilizer(self.outS, orb[0], act)[1])
                for orb in GroupAction(self.outS, labels, act).orbits()]

    def nonradical_class_orbits(self) -> list[tuple]:
        """(rep vector, stabilizer) for noncentral classes of S on non-radical lines."""
        p = self.p
        act = lambda X, v: mat_apply(X, v, p)  # noqa: E731
        vecs = [(a, c) for a in range(p) for c in range(p) if (a, c) != (0, 0)
                and line_of((a, c), p) not in self.radical_lines]
        return [(orb[0], orbit_stabilizer(self.outS, orb[0], act)[1])
                for orb in GroupAction(self.outS, vecs, act).orbits()]

    def w_closed_form(self, zeval: ZEvaluator) -> int:
        return zeval(self.outS) + sum(zeval(self.aut_Q(orb[0])) for orb in self.line_orbits
                                      if orb[0] in self.radical_lines)

    def m_d_closed_form(self, d: int, zeval: ZEvaluator) -> int:
        if d in (0, 1):
            return 0
        if d == 2:
            return (self.p - 1) // self.l * self.out_star.class_count
        if d == 3:
            return sum(zeval(H) for _, H in self.linear_orbits())
        return 0

    def k_closed_form(self, zeval: ZEvaluator | None = None) -> int:
        zeval = zeval or ZEvaluator(self.p)
        return (self.w_closed_form(zeval) + (self.p - 1) // self.l * self.out_star.class_count
                + sum(zeval(H) for _, H in self.nonradical_class_orbits()))

    def s_data(self) -> dict:
        p = self.p
        return {"p": p, "d": 3, "abelian": False, "sectional_rank": 2, "cl_S": p * p + p - 1,
                "cl_derived": p, "positive_degree_exponents": [1]}
