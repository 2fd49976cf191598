from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

from src.errors import (
    DomainError,
    DuplicateXError,
    EndpointError,
    NonMonotoneYError,
    NotInFError,
)
from src.models.config import load_config
from src.models.plmap import PLMap, Point
from src.logger import setup_console_and_file_logging

cfg = load_config()
logger = setup_console_and_file_logging(level=cfg.logging.level,
                                        logger_name=__name__,
                                        log_file=cfg.logging.log_file)

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_point(pt: Tuple[RationalLike, RationalLike]) -> Point:
    x, y = pt
    return Fraction(x), Fraction(y)


def normalize(points: Iterable[Tuple[RationalLike, RationalLike]]) -> PLMap:
    """
    Build the canonical PLMap interpolating ``points``.

    Points are sorted by x, validated and stripped of every interior point that
    is collinear with its neighbours.

    Args:
        points: (x, y) pairs; anything ``Fraction`` accepts is allowed per coordinate.

    Returns:
        PLMap: the minimal breakpoint form of the interpolating map.

    Raises:
        DuplicateXError: two points share an x-coordinate.
        EndpointError: (0,0) or (1,1) missing, or a point outside [0,1].
        NonMonotoneYError: y does not strictly increase with x.
    """
    pts = sorted((_as_point(p) for p in points), key=lambda p: p[0])
    if len(pts) < 2:
        raise EndpointError("a map needs at least the endpoints (0,0) and (1,1)")

    for i, ((x0, _), (x1, _)) in enumerate(zip(pts, pts[1:])):
        if x0 == x1:
            raise DuplicateXError(f"duplicate x-coordinate {x0} at sorted position {i + 1}")

    if pts[0] != (ZERO, ZERO):
        raise EndpointError(f"first breakpoint must be (0,0), got ({pts[0][0]}, {pts[0][1]})")
    if pts[-1] != (ONE, ONE):
        raise EndpointError(f"last breakpoint must be (1,1), got ({pts[-1][0]}, {pts[-1][1]})")

    for i, ((x0, y0), (x1, y1)) in enumerate(zip(pts, pts[1:])):
        if y1 <= y0:
            raise NonMonotoneYError(
                f"y not strictly increasing between x={x0} and x={x1} (position {i + 1})"
            )

    kept: List[Point] = [pts[0]]
    for pt in pts[1:]:
        if len(kept) >= 2:
            (xa, ya), (xb, yb) = kept[-2], kept[-1]
            # collinear iff the two slopes agree
            if (yb - ya) * (pt[0] - xb) == (pt[1] - yb) * (xb - xa):
                kept.pop()
        kept.append(pt)
    return PLMap(breakpoints=tuple(kept))


def identity() -> PLMap:
    return PLMap(breakpoints=((ZERO, ZERO), (ONE, ONE)))


def _check_closed(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not ZERO <= x <= ONE:
        raise DomainError(f"x must lie in [0,1], got {x}")
    return x


def _check_open(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not ZERO < x < ONE:
        raise DomainError(f"x must lie in (0,1), got {x}")
    return x


def evaluate(f: PLMap, x: RationalLike) -> Fraction:
    """Exact value f(x) by interpolation on the segment containing x."""
    x = _check_closed(x)
    xs = f.xs
    i = bisect_right(xs, x)
    if i == len(xs):
        return f.ys[-1]
    x0, y0 = f.breakpoints[i - 1]
    return y0 + (x - x0) * f.slopes[i - 1]


def inverse(f: PLMap) -> PLMap:
    # swapping coordinates keeps the list canonical
    return PLMap(breakpoints=tuple((y, x) for x, y in f.breakpoints))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """
    Return f∘g (apply g first).

    The candidate breakpoints are g's own and the g-preimages of f's.
    """
    g_inv = inverse(g)
    candidates = set(g.xs)
    candidates.update(evaluate(g_inv, x) for x in f.xs)
    return normalize((x, evaluate(f, evaluate(g, x))) for x in candidates)


def conjugate(f: PLMap, h: PLMap) -> PLMap:
    """h∘f∘h⁻¹"""
    return compose(compose(h, f), inverse(h))


def power(f: PLMap, n: int) -> PLMap:
    """n-fold composition of f; negative n iterates the inverse."""
    base = inverse(f) if n < 0 else f
    n = abs(n)
    result = identity()
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def slopes_at(f: PLMap, x: RationalLike) -> Tuple[Fraction, Fraction]:
    """
    One-sided slopes of f at an interior point.

    Returns:
        tuple: (left slope, right slope); equal when x is not a breakpoint.

    Raises:
        DomainError: x is not in (0,1).
    """
    x = _check_open(x)
    i = bisect_left(f.xs, x)
    if f.xs[i] == x:
        return f.slopes[i - 1], f.slopes[i]
    return f.slopes[i - 1], f.slopes[i - 1]


def first_slope(f: PLMap) -> Fraction:
    return f.slopes[0]


def last_slope(f: PLMap) -> Fraction:
    return f.slopes[-1]


def is_in_F(f: PLMap) -> bool:
    """True iff f(x) > x on all of (0,1); checking interior breakpoints suffices."""
    interior = f.interior
    return bool(interior) and all(y > x for x, y in interior)


def _is_below_diagonal(f: PLMap) -> bool:
    interior = f.interior
    return bool(interior) and all(y < x for x, y in interior)


def require_in_F(f: PLMap) -> None:
    if not is_in_F(f):
        raise NotInFError(f"map is not strictly above the diagonal on (0,1): {f!r}")


def orient_into_F(f: PLMap) -> Tuple[PLMap, bool]:
    """
    Bring a map of the mirrored class (f(x) < x on (0,1)) into F by inversion.

    Conjugacy is preserved by inversion, so decisions about mirrored maps can be
    taken on their inverses; a witness for f⁻¹, g⁻¹ is also a witness for f, g.

    Returns:
        tuple: (map in F, whether it was inverted).
    """
    if is_in_F(f):
        return f, False
    if _is_below_diagonal(f):
        logger.debug("Inverting mirrored map with %d nodes", f.node_count)
        return inverse(f), True
    raise NotInFError("map has a fixed point in (0,1) or crosses the diagonal")


def equal(f: PLMap, g: PLMap) -> bool:
    return f.breakpoints == g.breakpoints
