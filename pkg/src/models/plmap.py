from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Tuple

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PLMap:
    """
    Orientation preserving piecewise linear homeomorphism of [0,1].

    Stored as its minimal breakpoint list: starts at (0,0), ends at (1,1), both
    coordinates strictly increasing and no interior breakpoint collinear with its
    neighbours. Build instances through ``src.services.plmap.normalize``; equality
    of two canonical maps is equality of their breakpoint tuples.
    """
    breakpoints: Tuple[Point, ...]

    @cached_property
    def xs(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints)

    @cached_property
    def ys(self) -> Tuple[Fraction, ...]:
        return tuple(y for _, y in self.breakpoints)

    @cached_property
    def slopes(self) -> Tuple[Fraction, ...]:
        """Slope of each segment, left to right."""
        pts = self.breakpoints
        return tuple(
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(pts, pts[1:])
        )

    @property
    def interior(self) -> Tuple[Point, ...]:
        return self.breakpoints[1:-1]

    @property
    def node_count(self) -> int:
        return len(self.breakpoints) - 2

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in self.breakpoints)
        return f"PLMap([{pts}])"
