from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from src.errors import DomainError
from src.models.config import load_config
from src.models.invariants import BetaProfile, MarkedPair, NodeProfile
from src.models.plmap import PLMap
from src.services.plmap import (
    evaluate,
    first_slope,
    inverse,
    require_in_F,
    slopes_at,
)
from src.logger import setup_console_and_file_logging

cfg = load_config()
logger = setup_console_and_file_logging(level=cfg.logging.level,
                                        logger_name=__name__,
                                        log_file=cfg.logging.log_file)

ONE = Fraction(1)


def f_star(f: PLMap, x) -> Fraction:
    """Ratio of right to left slope at x; 1 exactly when x is not a node."""
    left, right = slopes_at(f, x)
    return right / left


def node_profile(f: PLMap) -> NodeProfile:
    """
    Nodes of f with their f* values.

    In canonical form every interior breakpoint is a genuine slope change, so
    the nodes are exactly the interior breakpoints.
    """
    slopes = f.slopes
    entries = tuple(
        (x, slopes[i + 1] / slopes[i])
        for i, (x, _) in enumerate(f.interior)
    )
    return NodeProfile(entries=entries)


def alpha(f: PLMap) -> Fraction:
    """Slope of the first segment of f ∈ F, i.e. the left slope at the smallest node."""
    require_in_F(f)
    return first_slope(f)


def _fundamental_domain(f: PLMap, base: Fraction) -> Tuple[Fraction, Fraction]:
    return base, first_slope(f) * base


def phi_value(f: PLMap, x) -> Fraction:
    """
    Product of f* along the forward orbit of x, for x in [x_f, α·x_f).

    The orbit is followed until it passes the largest node; every later term is 1.

    Raises:
        NotInFError: f is not in F.
        DomainError: x is outside the fundamental domain.
    """
    require_in_F(f)
    x = Fraction(x)
    profile = node_profile(f)
    lo, hi = _fundamental_domain(f, profile.smallest)
    if not lo <= x < hi:
        raise DomainError(f"x must lie in the fundamental domain [{lo}, {hi}), got {x}")
    return _orbit_product(f, dict(profile.entries), profile.largest, x)


def _orbit_product(f: PLMap, stars: Dict[Fraction, Fraction], top: Fraction, x: Fraction) -> Fraction:
    product = ONE
    while x <= top:
        product *= stars.get(x, ONE)
        x = evaluate(f, x)
    return product


def fundamental_representative(f: PLMap, z, base) -> Fraction:
    """
    Pull z back along f⁻¹ into [base, α·base).

    Args:
        f: map in F.
        z: point in [base, 1).
        base: left end of the fundamental domain, 0 < base <= x_f.

    Raises:
        NotInFError: f is not in F.
        DomainError: base outside (0, x_f], or z outside [base, 1).
    """
    require_in_F(f)
    z, base = Fraction(z), Fraction(base)
    x_f = node_profile(f).smallest
    if not 0 < base <= x_f:
        raise DomainError(f"base point must lie in (0, {x_f}], got {base}")
    if not base <= z < 1:
        raise DomainError(f"point {z} lies outside [{base}, 1)")
    top = first_slope(f) * base
    f_inv = inverse(f)
    while z >= top:
        z = evaluate(f_inv, z)
    return z


def marked_points(f: PLMap, base) -> List[Tuple[Fraction, Fraction]]:
    """
    Marked points of f read on the fundamental domain [base, α·base).

    Every node is projected to its representative; the f* values of nodes that
    share a representative multiply. Representatives whose product is exactly 1
    carry no mark and are dropped.

    Returns:
        list: (representative, value) pairs sorted by representative.
    """
    require_in_F(f)
    base = Fraction(base)
    profile = node_profile(f)
    if not 0 < base <= profile.smallest:
        raise DomainError(f"base point must lie in (0, {profile.smallest}], got {base}")

    products: Dict[Fraction, Fraction] = {}
    for z, star in profile.entries:
        u = fundamental_representative(f, z, base)
        products[u] = products.get(u, ONE) * star
    return sorted((u, v) for u, v in products.items() if v != ONE)


def canonical_rotation(pairs: Sequence[MarkedPair]) -> Tuple[MarkedPair, ...]:
    """Lexicographically least rotation of a cyclic sequence (value compared first, then gap)."""
    pairs = tuple(pairs)
    if not pairs:
        return pairs
    return min(pairs[i:] + pairs[:i] for i in range(len(pairs)))


def _encode(f: PLMap, base: Fraction) -> BetaProfile:
    a = first_slope(f)
    points = marked_points(f, base)
    us = [u for u, _ in points]
    gaps = [nxt / cur for cur, nxt in zip(us, us[1:])]
    gaps.append(a * us[0] / us[-1])
    marked = tuple((v, r) for (_, v), r in zip(points, gaps))
    return BetaProfile(alpha=a, marked=canonical_rotation(marked))


def beta_profile(f: PLMap) -> BetaProfile:
    """
    Invariant pair (alpha, canonical marked sequence) of f ∈ F.

    Circle positions are kept multiplicatively: the gap between consecutive
    marked points u < u' is u'/u, and the wrap gap is α·u_first/u_last.
    """
    require_in_F(f)
    profile = _encode(f, node_profile(f).smallest)
    logger.debug("beta profile of %d-node map: %d marked points", f.node_count, len(profile.marked))
    return profile


def beta_equal(a: BetaProfile, b: BetaProfile) -> bool:
    return a.alpha == b.alpha and a.marked == b.marked


def profile_from_base(f: PLMap, a) -> BetaProfile:
    """Same construction as ``beta_profile`` on the fundamental domain [a, α·a), 0 < a <= x_f."""
    require_in_F(f)
    return _encode(f, Fraction(a))
