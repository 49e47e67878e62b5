from __future__ import annotations

from typing import Callable, Hashable, Sequence

from .core import Group, orbit_stabilizer


class GroupAction:
    """A left action of ``group`` on an indexed point set."""

    def __init__(self, group: Group, points: Sequence[Hashable], act: Callable):
        self.group = group
        self.points = list(points)
        self.act = act
        self.index = {pt: i for i, pt in enumerate(self.points)}

    def orbit(self, pt) -> list:
        return orbit_stabilizer(self.group, pt, self.act, stabilizer=False)[0]

    def stabilizer(self, pt) -> Group:
        return orbit_stabilizer(self.group, pt, self.act)[1]

    def orbits(self) -> list[list]:
        """Orbits ordered by their first point in the point list; each orbit starts at that point."""
        seen: set = set()
        out = []
        for pt in self.points:
            if pt in seen:
                continue
            orb = self.orbit(pt)
            seen.update(orb)
            out.append(orb)
        return out

    def orbit_reps(self) -> list:
        return [orb[0] for orb in self.orbits()]

    def restrict(self, H: Group) -> "GroupAction":
        return GroupAction(H, self.points, self.act)

    def check(self) -> None:
        """Assert the identity acts trivially and generators permute the points."""
        e = self.group.identity
        for pt in self.points:
            if self.act(e, pt) != pt:
                raise AssertionError("identity does not act trivially")
        for g in self.group.generators:
            images = {self.act(g, pt) for pt in self.points}
            if len(images) != len(self.points) or not images <= set(self.index):
                raise AssertionError("generator does not permute the point set")
