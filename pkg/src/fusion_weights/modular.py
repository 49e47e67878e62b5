"""Counting invariants of modular group algebras.

Character degrees come from the class-algebra eigenvector method over a
prime field F_q with q = 1 mod exp(G): the central characters
omega_chi(K_j) = |K_j| chi(g_j) / chi(1) are the common eigenvectors of the
class multiplication matrices, and chi(1)^2 = |G| / sum_j omega_j omega_j' / |K_j|.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Callable

from .config import CapExceeded, caps
from .groups import Group, Mat2Backing, HeisenbergBacking, p_core, quotient_group, valuation
from .groups.core import is_normal


class UnsupportedError(ValueError):
    """A computation outside the supported families."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def working_prime(order: int, exponent: int) -> int:
    q = exponent + 1
    while not (_is_prime(q) and q * q > 4 * order):
        q += exponent
    return q


# --- linear algebra mod q -------------------------------------------------

def _nullspace(A: list[list[int]], q: int) -> list[list[int]]:
    rows = [r[:] for r in A]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fcol]) % q
        basis.append(v)
    return basis


def _reduce_basis(vectors: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce so each vector has a 1 at its pivot and 0 at the other pivots."""
    rows = [v[:] for v in vectors]
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _charpoly(A: list[list[int]], q: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(A)
    H = [r[:] for r in A]
    for k in range(n - 2):
        i = next((i for i in range(k + 1, n) if H[i][k]), None)
        if i is None:
            continue
        if i != k + 1:
            H[i], H[k + 1] = H[k + 1], H[i]
            for row in H:
                row[i], row[k + 1] = row[k + 1], row[i]
        tinv = pow(H[k + 1][k], -1, q)
        for j in range(k + 2, n):
            u = H[j][k] * tinv % q
            if not u:
                continue
            H[j] = [(a - u * b) % q for a, b in zip(H[j], H[k + 1])]
            for row in H:
                row[k + 1] = (row[k + 1] + u * row[j]) % q
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        h = H[m - 1][m - 1]
        cur = [0] * (m + 1)
        for d, c in enumerate(prev):
            cur[d + 1] = (cur[d + 1] + c) % q
            cur[d] = (cur[d] - h * c) % q
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % q
            coef = H[m - i - 1][m - 1] * t % q
            if coef:
                for d, c in enumerate(polys[m - i - 1]):
                    cur[d] = (cur[d] - coef * c) % q
        polys.append(cur)
    return polys[n]


def _roots(poly: list[int], q: int) -> list[int]:
    out = []
    for x in range(q):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % q
        if acc == 0:
            out.append(x)
    return out


# --- class algebra ---------------------------------------------------------

@dataclass
class ClassAlgebra:
    """Central characters of G reduced mod a working prime."""

    group: Group
    q: int
    omegas: list[tuple]
    degrees: list[int]

    @cached_property
    def lookup(self) -> dict:
        return {w: i for i, w in enumerate(self.omegas)}


def class_algebra(G: Group) -> ClassAlgebra:
    if G.order > caps.degree_engine_order:
        raise CapExceeded(f"degree engine limited to order <= {caps.degree_engine_order}")
    classes = G.conjugacy_classes
    r = len(classes)
    cls = G.class_index
    q = working_prime(G.order, G.exponent)
    sizes = [len(m) for _, m in classes]
    inv_class = [cls[G.inv(rep)] for rep, _ in classes]
    if r == G.order:
        # Abelian: central characters are the characters themselves.
        return _abelian_algebra(G, q)
    # M[i][j][k] = #{x in K_i : x^-1 g_k in K_j}
    M = [[[0] * r for _ in range(r)] for _ in range(r)]
    b = G.backing
    elems = G.elements
    xcls = [cls[x] for x in elems]
    xinv = [b.inv(x) for x in elems]
    for k, (gk, _) in enumerate(classes):
        for x, i, xi in zip(elems, xcls, xinv):
            M[i][cls[b.mul(xi, gk)]][k] += 1
    spaces = [[[1 if a == c else 0 for a in range(r)] for c in range(r)]]
    spaces = [_reduce_basis(spaces[0], q)]
    for i in range(1, r):
        if all(len(B) == 1 for B, _ in spaces):
            break
        Mi = M[i]
        nxt = []
        for B, piv in spaces:
            if len(B) == 1:
                nxt.append((B, piv))
                continue
            d = len(B)
            images = [[sum(Mi[j][k] * v[k] for k in range(r)) % q for j in range(r)] for v in B]
            A = [[images[bcol][piv[a]] for bcol in range(d)] for a in range(d)]
            for lam in _roots(_charpoly(A, q), q):
                shifted = [[(A[a][c] - (lam if a == c else 0)) % q for c in range(d)] for a in range(d)]
                coeffs = _nullspace(shifted, q)
                vecs = [[sum(cf[a] * B[a][j] for a in range(d)) % q for j in range(r)] for cf in coeffs]
                nxt.append(_reduce_basis(vecs, q))
        spaces = nxt
    if len(spaces) != r or any(len(B) != 1 for B, _ in spaces):
        raise ArithmeticError("class matrices failed to separate the characters")
    omegas = []
    degrees = []
    for B, _ in spaces:
        v = B[0]
        s = pow(v[0], -1, q)
        w = tuple(x * s % q for x in v)
        total = sum(w[j] * w[inv_class[j]] * pow(sizes[j], -1, q) for j in range(r)) % q
        sq = G.order * pow(total, -1, q) % q
        deg = next((dd for dd in range(1, isqrt(G.order) + 1) if dd * dd % q == sq), None)
        if deg is None:
            raise ArithmeticError("no integral degree matches the eigenvalue data")
        omegas.append(w)
        degrees.append(deg)
    order = sorted(range(r), key=lambda i: (degrees[i], omegas[i]))
    omegas = [omegas[i] for i in order]
    degrees = [degrees[i] for i in order]
    if sum(dd * dd for dd in degrees) != G.order:
        raise ArithmeticError("degree squares do not sum to the group order")
    return ClassAlgebra(G, q, omegas, degrees)


def _abelian_algebra(G: Group, q: int) -> ClassAlgebra:
    """Characters of an abelian group as homomorphisms into F_q^*."""
    classes = G.conjugacy_classes
    index = G.class_index
    e = G.exponent
    zeta = _root_of_unity(q, e)
    gens = list(G.generators)
    # Enumerate assignments of e-th roots of unity to generators; keep the consistent ones.
    chars = [{G.identity: 1}]
    for g in gens:
        grown = []
        for chi in chars:
            for k in range(e):
                val = pow(zeta, k, q)
                ext = _extend_character(G, chi, g, val, q)
                if ext is not None:
                    grown.append(ext)
        chars = _dedupe(grown)
    if len(chars) != G.order:
        raise ArithmeticError("abelian dual has the wrong size")
    omegas = sorted(tuple(chi[rep] for rep, _ in classes) for chi in chars)
    del index
    return ClassAlgebra(G, q, omegas, [1] * len(omegas))


def _root_of_unity(q: int, e: int) -> int:
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in _prime_factors(q - 1)):
            return pow(g, (q - 1) // e, q)
    return 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _extend_character(G: Group, chi: dict, g, val: int, q: int) -> dict | None:
    """Extend a character defined on a subgroup H to <H, g> by chi(g) = val."""
    b = G.backing
    out = dict(chi)
    base = list(chi.items())
    cur, cval = g, val
    while True:
        if cur in out:
            # cur = g^k lies in H: consistency requires val^k = chi(cur)
            if out[cur] != cval:
                return None
            break
        for h, hv in base:
            out[b.mul(h, cur)] = hv * cval % q
        cur = b.mul(cur, g)
        cval = cval * val % q
    return out


def _dedupe(chars: list[dict]) -> list[dict]:
    seen = set()
    out = []
    for chi in chars:
        key = tuple(sorted(chi.items()))
        if key not in seen:
            seen.add(key)
            out.append(chi)
    return out


@dataclass
class CharacterDegreeMultiset:
    multiplicities: dict
    group_order: int

    def __post_init__(self):
        if sum(m * d * d for d, m in self.multiplicities.items()) != self.group_order:
            raise ArithmeticError("sum of squared degrees differs from the group order")

    @property
    def count(self) -> int:
        return sum(self.multiplicities.values())

    def as_sorted_list(self) -> list[int]:
        return sorted(d for d, m in self.multiplicities.items() for _ in range(m))


def character_degrees(G: Group) -> CharacterDegreeMultiset:
    alg = class_algebra(G)
    return CharacterDegreeMultiset(dict(sorted(Counter(alg.degrees).items())), G.order)


def ell_count(G: Group, p: int) -> int:
    """Number of p-regular conjugacy classes."""
    return sum(1 for rep, _ in G.conjugacy_classes if G.element_order(rep) % p)


def defect_zero_count(G: Group, p: int) -> int:
    target = valuation(G.order, p)
    return sum(1 for d in class_algebra(G).degrees if valuation(d, p) == target)


# --- cocycles and z ---------------------------------------------------------

@dataclass(frozen=True)
class Trivial:
    pass


TRIVIAL = Trivial()


@dataclass
class CentralExtension:
    """A class alpha realised by a central extension Z -> cover -> G and a character eta of Z.

    Z must be cyclic; ``eta`` is the exponent j with eta(z0^i) = zeta^(i*j),
    z0 the least element of Z of maximal order.
    """

    cover: Group
    kernel: Group
    eta: int

    def __post_init__(self):
        b = self.cover.backing
        if not all(b.mul(z, g) == b.mul(g, z) for z in self.kernel.generators for g in self.cover.generators):
            raise ValueError("kernel is not central")
        n = self.kernel.order
        if not any(self.kernel.element_order(z) == n for z in self.kernel.elements):
            raise ValueError("kernel must be cyclic")

    @cached_property
    def projection(self):
        return quotient_group(self.cover, self.kernel)

    @cached_property
    def generator(self):
        n = self.kernel.order
        return min(z for z in self.kernel.elements if self.kernel.element_order(z) == n)

    def eta_trivial_on(self, T: set) -> bool:
        n = self.kernel.order
        b = self.cover.backing
        z0 = self.generator
        cur, i = b.identity(), 0
        while True:
            if cur in T and (i * self.eta) % n:
                return False
            i += 1
            cur = b.mul(cur, z0)
            if i == n:
                return True


@dataclass(frozen=True)
class ZResult:
    value: int
    rule: str


def _det_one_count(H: Group) -> int:
    det = H.backing.det
    return sum(1 for x in H.elements if det(x) == 1)


def sl2_index(H: Group, p: int) -> int | None:
    """|H : SL_2(p)| when H is a 2x2 matrix group over F_p containing SL_2(p), else None."""
    b = H.backing
    if not isinstance(b, Mat2Backing) or b.p != p:
        return None
    if H.order % (p * (p * p - 1)):
        return None
    if _det_one_count(H) != p * (p * p - 1):
        return None
    return H.order // (p * (p * p - 1))


def _twisted_p_prime_count(alpha: CentralExtension) -> int:
    cover = alpha.cover
    Z = alpha.kernel.element_set
    b = cover.backing
    n = len(Z)
    total = 0
    for rep, members in cover.conjugacy_classes:
        T = {z for z in Z if b.mul(rep, z) in members}
        if alpha.eta_trivial_on(T):
            total += len(T)
    if total % n:
        raise ArithmeticError("inconsistent twisted class count")
    return total // n


def z_rules(G: Group, p: int, alpha=TRIVIAL) -> dict[str, int]:
    """Every z rule that applies to (G, p, alpha), with its value."""
    out: dict[str, int] = {}
    if isinstance(alpha, CentralExtension):
        if alpha.kernel.order % p == 0:
            raise ValueError("central kernel must have order prime to p")
        if p_core(alpha.cover, p).order > 1:
            out["p_core"] = 0
        if G.order % p:
            out["p_prime"] = _twisted_p_prime_count(alpha)
        return out
    if p_core(G, p).order > 1:
        out["p_core"] = 0
    if G.order % p:
        out["p_prime"] = G.class_count
    idx = sl2_index(G, p)
    if idx is not None:
        out["sl2"] = idx
    if G.order <= caps.degree_engine_order:
        out["defect_zero"] = defect_zero_count(G, p)
    return out


def z_evaluate(G: Group, p: int, alpha=TRIVIAL) -> ZResult:
    """The rule cascade: p-core, p'-group, SL_2(p) index, defect-zero count."""
    if isinstance(alpha, CentralExtension):
        if alpha.kernel.order % p == 0:
            raise ValueError("central kernel must have order prime to p")
        if p_core(alpha.cover, p).order > 1:
            return ZResult(0, "p_core")
        if G.order % p:
            return ZResult(_twisted_p_prime_count(alpha), "p_prime")
        raise UnsupportedError("unsupported twisted z: only the p-core and p'-group rules handle twisted algebras")
    if G.order % p == 0 and p_core(G, p).order > 1:
        return ZResult(0, "p_core")
    if G.order % p:
        return ZResult(G.class_count, "p_prime")
    idx = sl2_index(G, p)
    if idx is not None:
        return ZResult(idx, "sl2")
    return ZResult(defect_zero_count(G, p), "defect_zero")


def z_count(G: Group, p: int, alpha=TRIVIAL) -> int:
    return z_evaluate(G, p, alpha).value


@dataclass
class ZEvaluator:
    """Caches z values per subgroup and records which rule produced each."""

    p: int
    cache: dict = field(default_factory=dict)
    provenance: list = field(default_factory=list)

    def __call__(self, H: Group) -> int:
        key = (H.backing, H.element_set)
        hit = self.cache.get(key)
        if hit is None:
            hit = z_evaluate(H, self.p)
            self.cache[key] = hit
            self.provenance.append({"order": H.order, "rule": hit.rule, "value": hit.value})
        return hit.value

    def rule_counts(self) -> dict:
        return dict(sorted(Counter(e["rule"] for e in self.provenance).items()))


# --- labelled irreducible characters of p-groups ---------------------------

@dataclass(frozen=True)
class IrrChar:
    label: object
    degree: int
    defect: int


@dataclass
class LabeledIrrSet:
    """Irr(Q) with labels, defects and the action mu -> mu o phi^-1."""

    chars: list[IrrChar]
    order: int
    p: int
    family: str
    _act: Callable = field(repr=False, default=None)

    def __len__(self) -> int:
        return len(self.chars)

    def act(self, phi, i: int) -> int:
        return self._act(phi, i)

    def permutation(self, phi) -> tuple:
        return tuple(self._act(phi, i) for i in range(len(self.chars)))

    def indices_of_defect(self, d: int) -> list[int]:
        return [i for i, c in enumerate(self.chars) if c.defect == d]


def irr_with_defects(Q: Group, p: int, family: str = "general") -> LabeledIrrSet:
    """Irreducible characters of a p-group with defects and an automorphism action.

    Families: ``abelian`` and ``general`` use central-character fingerprints
    (automorphisms are callables on elements of Q); ``extraspecial`` needs Q
    to be the native p^{1+2}_+ and accepts 2x2 matrices or callables.
    """
    if not Q.is_p_group(p):
        raise UnsupportedError("Irr sets are only built for p-groups")
    n = valuation(Q.order, p)
    if family == "extraspecial":
        return _irr_extraspecial_native(Q, p)
    if family not in ("abelian", "general"):
        raise UnsupportedError(f"unsupported character family {family!r}")
    if family == "abelian" and not Q.is_abelian:
        raise UnsupportedError("family 'abelian' requested for a nonabelian group")
    alg = class_algebra(Q)
    classes = Q.conjugacy_classes
    cls = Q.class_index
    chars = [IrrChar(i, d, n - valuation(d, p)) for i, d in enumerate(alg.degrees)]
    lookup = alg.lookup

    def act(phi, i):
        pi = [cls[phi(rep)] for rep, _ in classes]
        image = [0] * len(pi)
        for j, wj in enumerate(alg.omegas[i]):
            image[pi[j]] = wj
        return lookup[tuple(image)]

    return LabeledIrrSet(chars, Q.order, p, family, act)


def _irr_extraspecial_native(Q: Group, p: int) -> LabeledIrrSet:
    if not isinstance(Q.backing, HeisenbergBacking) or Q.order != p**3:
        raise UnsupportedError("family 'extraspecial' needs the native p^{1+2}_+ backing")
    return irr_extraspecial(p)


def matrix_of_automorphism(phi, p: int) -> tuple:
    """The GL_2(p) matrix induced on S/Z(S) by an automorphism of the native extraspecial group."""
    a = phi((1, 0, 0))
    b = phi((0, 1, 0))
    return (a[0], b[0], a[1], b[1])


def irr_extraspecial(p: int) -> LabeledIrrSet:
    """Irr(p^{1+2}_+): linear chi_(u,v) and faithful phi_u, acted on through GL_2(p).

    A matrix X = [[x, y], [z, w]] moves linear labels by X^-T and faithful
    labels by u -> u / det X.
    """
    chars = [IrrChar(("lin", u, v), 1, 3) for u in range(p) for v in range(p)]
    chars += [IrrChar(("faithful", u), p, 2) for u in range(1, p)]
    index = {c.label: i for i, c in enumerate(chars)}

    def act(phi, i):
        X = phi if isinstance(phi, tuple) else matrix_of_automorphism(phi, p)
        x, y, z, w = X
        det = (x * w - y * z) % p
        label = chars[i].label
        if label[0] == "faithful":
            return index[("faithful", label[1] * pow(det, -1, p) % p)]
        u, v = label[1], label[2]
        di = pow(det, -1, p)
        # X^-T = det^-1 [[w, -z], [-y, x]]
        return index[("lin", (w * u - z * v) * di % p, (-y * u + x * v) * di % p)]

    return LabeledIrrSet(chars, p**3, p, "extraspecial", act)


__all__ = [
    "CentralExtension", "CharacterDegreeMultiset", "ClassAlgebra", "IrrChar", "LabeledIrrSet",
    "TRIVIAL", "Trivial", "UnsupportedError", "ZEvaluator", "ZResult", "character_degrees",
    "class_algebra", "defect_zero_count", "ell_count", "irr_extraspecial", "irr_with_defects",
    "is_normal", "matrix_of_automorphism", "sl2_index", "working_prime", "z_count", "z_evaluate",
    "z_rules",
]
