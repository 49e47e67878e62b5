"""Group input files and a few standard constructions."""
from __future__ import annotations

import json
from pathlib import Path

from .backings import BackingError, HeisenbergBacking, Mat2Backing, PermBacking
from .core import Group, generate_group


class GroupInputError(ValueError):
    pass


def group_from_dict(data: dict, name: str | None = None) -> Group:
    kind = data.get("kind")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise GroupInputError("'generators' must be a non-empty list")
    try:
        if kind == "perm":
            n = int(data["degree"])
            backing = PermBacking(n)
            for g in gens:
                if len(g) != n:
                    raise GroupInputError(f"permutation {g} does not have degree {n}")
            gens = [[int(i) - 1 for i in g] for g in gens]
        elif kind == "mat2":
            backing = Mat2Backing(int(data["prime"]))
        else:
            raise GroupInputError(f"unknown group kind {kind!r}")
        return generate_group(gens, backing, name=name or data.get("name"))
    except (KeyError, TypeError) as exc:
        raise GroupInputError(f"malformed group description: {exc}") from exc
    except BackingError as exc:
        raise GroupInputError(str(exc)) from exc


def load_group(path: str | Path) -> Group:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupInputError(f"cannot read group file {path}: {exc}") from exc
    return group_from_dict(data, name=data.get("name", path.stem))


def symmetric_group(n: int) -> Group:
    b = PermBacking(n)
    if n == 1:
        return Group(b, (), name="S1")
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return generate_group([cycle, swap], b, name=f"S{n}")


def alternating_group(n: int) -> Group:
    b = PermBacking(n)
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0
        gens.append(tuple(img))
    return generate_group(gens, b, name=f"A{n}")


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n acting on n points."""
    b = PermBacking(n)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generate_group([rot, ref], b, name=f"D{2 * n}")


def cyclic_group(n: int) -> Group:
    b = PermBacking(n)
    return generate_group([tuple((i + 1) % n for i in range(n))], b, name=f"C{n}")


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    phi = p - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and all(q % r for r in range(2, int(q**0.5) + 1))]
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"{p} is not prime")


def gl2(p: int) -> Group:
    w = primitive_root(p)
    b = Mat2Backing(p)
    gens = [(w, 0, 0, 1), (p - 1, 1, p - 1, 0)] if p > 2 else [(1, 1, 0, 1), (0, 1, 1, 0)]
    return generate_group(gens, b, name=f"GL2({p})")


def sl2(p: int) -> Group:
    b = Mat2Backing(p)
    return generate_group([(1, 1, 0, 1), (1, 0, 1, 1)], b, name=f"SL2({p})")


def extraspecial(p: int) -> Group:
    """p^{1+2}_+ in the native triple backing."""
    b = HeisenbergBacking(p)
    return generate_group([(1, 0, 0), (0, 1, 0)], b, name=f"{p}^(1+2)+")


def semidirect_cyclic(q: int, r: int) -> Group:
    """C_q x| C_r as permutations of q points (q prime, r | q - 1)."""
    if (q - 1) % r:
        raise ValueError("r must divide q - 1")
    g = primitive_root(q)
    a = pow(g, (q - 1) // r, q)
    b = PermBacking(q)
    trans = tuple((i + 1) % q for i in range(q))
    mult = tuple((a * i) % q for i in range(q))
    return generate_group([trans, mult], b, name=f"C{q}:C{r}")


def regular_permutation_group(G: Group, extra_automorphisms=()) -> Group:
    """G acting on itself by left translation, optionally with automorphisms adjoined.

    Each automorphism is a callable on elements of G; the result realises
    G x| <automorphisms> as a permutation group on |G| points.
    """
    elems = G.elements
    index = {x: i for i, x in enumerate(elems)}
    gens = [tuple(index[G.mul(g, x)] for x in elems) for g in G.generators]
    for phi in extra_automorphisms:
        gens.append(tuple(index[phi(x)] for x in elems))
    return generate_group(gens, PermBacking(len(elems)), name=f"{G.name or 'G'} (regular)")
