"""Endpoint-pair line segments in image coordinates."""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LineSegment:
    """A segment between two pixel positions, origin top-left, y pointing down.

    Endpoints are stored lower one first (``y1 >= y2``); on equal rows the
    left endpoint comes first. Constructing with the endpoints swapped
    reorders them.
    """

    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self) -> None:
        for name in ("x1", "y1", "x2", "y2"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if (self.x1, self.y1) == (self.x2, self.y2):
            raise ValueError(f"Segment endpoints must be distinct, got ({self.x1}, {self.y1}) twice")
        if self.y1 < self.y2 or (self.y1 == self.y2 and self.x1 > self.x2):
            x1, y1 = self.x1, self.y1
            object.__setattr__(self, "x1", self.x2)
            object.__setattr__(self, "y1", self.y2)
            object.__setattr__(self, "x2", x1)
            object.__setattr__(self, "y2", y1)

    @property
    def dx(self) -> int:
        return self.x2 - self.x1

    @property
    def dy(self) -> int:
        return self.y2 - self.y1

    @property
    def length(self) -> float:
        return math.hypot(self.dx, self.dy)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.x1, self.y1, self.x2, self.y2

    def within(self, width: int, height: int) -> bool:
        """True when both endpoints lie inside a ``width`` x ``height`` image."""
        return all(0 <= x < width for x in (self.x1, self.x2)) and all(0 <= y < height for y in (self.y1, self.y2))
