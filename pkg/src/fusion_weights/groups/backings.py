"""Element representations.

Elements are plain tuples so they hash cheaply and sort lexicographically;
a backing object knows how to multiply and invert them.
"""
from __future__ import annotations

from dataclasses import dataclass


class BackingError(ValueError):
    pass


@dataclass(frozen=True)
class PermBacking:
    """Permutations of {0..n-1} stored as image tuples; ``mul(x, y)`` applies y first."""

    degree: int
    kind = "perm"

    def identity(self) -> tuple:
        return tuple(range(self.degree))

    def mul(self, x: tuple, y: tuple) -> tuple:
        return tuple([x[i] for i in y])

    def inv(self, x: tuple) -> tuple:
        out = [0] * len(x)
        for i, xi in enumerate(x):
            out[xi] = i
        return tuple(out)

    def validate(self, x) -> tuple:
        x = tuple(int(v) for v in x)
        if len(x) != self.degree or sorted(x) != list(range(self.degree)):
            raise BackingError(f"not a permutation of {self.degree} points: {x}")
        return x


@dataclass(frozen=True)
class Mat2Backing:
    """Invertible 2x2 matrices over F_p as ``(a, b, c, d)`` for ``[[a, b], [c, d]]``."""

    p: int
    kind = "mat2"

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise BackingError(f"{self.p} is not prime")

    def identity(self) -> tuple:
        return (1, 0, 0, 1)

    def mul(self, x: tuple, y: tuple) -> tuple:
        a, b, c, d = x
        e, f, g, h = y
        p = self.p
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    def det(self, x: tuple) -> int:
        return (x[0] * x[3] - x[1] * x[2]) % self.p

    def inv(self, x: tuple) -> tuple:
        a, b, c, d = x
        p = self.p
        di = pow(self.det(x), -1, p)
        return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)

    def validate(self, x) -> tuple:
        if len(x) == 2 and all(len(row) == 2 for row in x):
            x = (x[0][0], x[0][1], x[1][0], x[1][1])
        x = tuple(int(v) % self.p for v in x)
        if len(x) != 4:
            raise BackingError(f"not a 2x2 matrix: {x}")
        if self.det(x) == 0:
            raise BackingError(f"singular matrix mod {self.p}: {x}")
        return x


@dataclass(frozen=True)
class HeisenbergBacking:
    """The extraspecial group of order p^3 and exponent p (p odd).

    ``(r, s, t)`` stands for alpha^r beta^s gamma^t, where gamma = [alpha, beta]
    = alpha^-1 beta^-1 alpha beta is central.
    """

    p: int
    kind = "heis"

    def __post_init__(self):
        if self.p < 3 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise BackingError(f"{self.p} is not an odd prime")

    def identity(self) -> tuple:
        return (0, 0, 0)

    def mul(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] - x[1] * y[0]) % p)

    def inv(self, x: tuple) -> tuple:
        p = self.p
        r, s, t = x
        return ((-r) % p, (-s) % p, (-t - r * s) % p)

    def validate(self, x) -> tuple:
        x = tuple(int(v) % self.p for v in x)
        if len(x) != 3:
            raise BackingError(f"not a triple: {x}")
        return x


def power(backing, x: tuple, n: int) -> tuple:
    if n < 0:
        x, n = backing.inv(x), -n
    result = backing.identity()
    while n:
        if n & 1:
            result = backing.mul(result, x)
        x = backing.mul(x, x)
        n >>= 1
    return result
