"""Input data for the nonconstrained fusion systems on p^{1+2}_+.

Each row gives generators of Out_F(S) <= GL_2(p) as (a, b, c, d) for
[[a, b], [c, d]] and the lines of S/Z(S) that carry an F-centric radical
Q_i, one per Out_F(S)-orbit.  Line i < p is spanned by (1, i) and line p by
(0, 1); Q_i is the preimage of line i.  Generic rows are functions of p and
of w, the least primitive root mod p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

SWAP = (0, 1, 1, 0)


def _diag(a: int, b: int) -> tuple:
    return (a, 0, 0, b)


@dataclass(frozen=True)
class CatalogRow:
    name: str            # catalog name used on the command line
    row_id: str          # unique table row id
    condition: str       # "3ndiv" (3 does not divide p-1), "3div" or "fixed"
    generators: Callable[[int, int], list]
    radical_lines: Callable[[int], tuple]
    fixed_prime: int | None = None

    def admits(self, p: int) -> bool:
        if self.condition == "fixed":
            return p == self.fixed_prime
        if p < 3:
            return False
        divides = (p - 1) % 3 == 0
        return divides if self.condition == "3div" else not divides


def _fixed(name, p, gens, lines, row_id=None):
    return CatalogRow(name, row_id or name, "fixed", lambda _p, _w: list(gens), lambda _p: tuple(lines), p)


ROWS: tuple[CatalogRow, ...] = (
    CatalogRow("PSL3", "PSL3[3ndiv]", "3ndiv",
            lambda p, w: [_diag(w, 1), _diag(1, w)], lambda p: (0, p)),
    CatalogRow("PSL3:2", "PSL3:2[3ndiv]", "3ndiv",
            lambda p, w: [_diag(w, 1), _diag(1, w), SWAP], lambda p: (0,)),
    CatalogRow("PSL3", "PSL3[3div]", "3div",
            lambda p, w: [_diag(pow(w, 3, p), 1), _diag(w, w)], lambda p: (0, p)),
    CatalogRow("PSL3:2", "PSL3:2[3div]", "3div",
            lambda p, w: [_diag(pow(w, 3, p), 1), _diag(w, w), SWAP], lambda p: (0,)),
    CatalogRow("PSL3:3", "PSL3:3", "3div",
            lambda p, w: [_diag(w, 1), _diag(1, w)], lambda p: (0, p)),
    CatalogRow("PSL3:S3", "PSL3:S3", "3div",
            lambda p, w: [_diag(w, 1), _diag(1, w), SWAP], lambda p: (0,)),
    _fixed("2F4(2)'", 3, [(2, 0, 0, 1), (1, 0, 0, 2), (0, 1, 1, 0)], (0, 1)),
    _fixed("J4", 3, [(2, 0, 0, 1), (1, 0, 0, 2), (1, 2, 2, 2)], (0,)),
    _fixed("Th", 5, [(2, 0, 0, 1), (1, 0, 0, 2), (3, 3, 4, 1)], (0,)),
    _fixed("He", 7, [(2, 0, 0, 1), (1, 0, 0, 2), (0, 6, 6, 0)], (1,)),
    _fixed("He:2", 7, [(2, 0, 0, 1), (3, 0, 0, 3), (0, 1, 1, 0)], (1,)),
    _fixed("Fi24'", 7, [(2, 0, 0, 1), (3, 0, 0, 3), (0, 6, 6, 0)], (1, 3)),
    _fixed("Fi24", 7, [(3, 0, 0, 1), (1, 0, 0, 3), (0, 1, 1, 0)], (1,)),
    _fixed("RV1", 7, [(3, 0, 0, 1), (1, 0, 0, 3), (0, 1, 1, 0)], (0, 1)),
    _fixed("ON", 7, [(3, 0, 0, 3), (1, 0, 0, 6), (0, 2, 3, 0)], (0, 3)),
    _fixed("ON:2", 7, [(3, 0, 0, 3), (1, 0, 0, 6), (2, 4, 6, 2)], (0,)),
    _fixed("RV2", 7, [(3, 0, 0, 3), (1, 0, 0, 6), (2, 4, 6, 2)], (0, 1)),
    _fixed("RV2:2", 7, [(3, 0, 0, 3), (1, 0, 0, 6), (2, 1, 5, 2)], (0,)),
    _fixed("M", 13, [(1, 0, 0, 8), (2, 0, 0, 2), (10, 9, 5, 2)], (0,)),
)

NAMES = tuple(dict.fromkeys(r.name for r in ROWS))


def find_row(name: str, p: int) -> CatalogRow:
    matches = [r for r in ROWS if r.name == name]
    if not matches:
        raise KeyError(f"unknown catalog system {name!r}; known: {', '.join(NAMES)}")
    for r in matches:
        if r.admits(p):
            return r
    raise KeyError(f"system {name!r} does not exist at p = {p}")
