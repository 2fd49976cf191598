from fractions import Fraction
from typing import List, Optional, Tuple

from src.errors import (
    DomainError,
    InternalInvariantError,
    InvalidInputError,
    InvalidParameterError,
    InvalidProfileError,
)
from src.models.config import Config, load_config
from src.models.conjugacy import (
    ConjugacyOutcome,
    ElementaryStep,
    MismatchKind,
    MismatchReason,
)
from src.models.invariants import BetaProfile, MarkedPair
from src.models.plmap import PLMap
from src.services.invariants import (
    alpha,
    beta_equal,
    beta_profile,
    node_profile,
)
from src.services.plmap import (
    compose,
    conjugate,
    equal,
    evaluate,
    first_slope,
    identity,
    inverse,
    is_in_F,
    normalize,
    require_in_F,
)
from src.logger import setup_console_and_file_logging

cfg = load_config()
logger = setup_console_and_file_logging(level=cfg.logging.level,
                                        logger_name=__name__,
                                        log_file=cfg.logging.log_file)

ONE = Fraction(1)


def single_node_map(p, lam) -> PLMap:
    """
    The unique map with one node, at p, whose f* there equals lam.

    Its first slope is 1/(p + lam·(1 − p)). Any lam > 0 other than 1 works, not
    only lam < 1: largest nodes of maps in F can have f* above 1.

    Raises:
        DomainError: p is not in (0,1).
        InvalidParameterError: lam <= 0 or lam == 1.
    """
    p, lam = Fraction(p), Fraction(lam)
    if not 0 < p < 1:
        raise DomainError(f"pivot must lie in (0,1), got {p}")
    if lam <= 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    if lam == ONE:
        raise InvalidParameterError("lambda = 1 gives no node")
    a = 1 / (p + lam * (1 - p))
    return normalize([(0, 0), (p, a * p), (1, 1)])


def elementary_conjugation(f: PLMap) -> Tuple[PLMap, ElementaryStep]:
    """
    Conjugate f by the single-node map that cancels its largest node.

    With z_m the largest node and h = single_node_map(z_m, f*(z_m)), the node at
    h(z_m) cancels and reappears at h(f⁻¹(z_m)); coincident nodes merge in
    ``normalize``. On a corner function this cycles the node values, last to first.

    Returns:
        tuple: (h∘f∘h⁻¹, the step taken).
    """
    require_in_F(f)
    pivot, lam = node_profile(f).entries[-1]
    h = single_node_map(pivot, lam)
    g = conjugate(f, h)
    logger.debug("Elementary conjugation at pivot %s (lambda %s): %d -> %d nodes",
                 pivot, lam, f.node_count, g.node_count)
    return g, ElementaryStep(pivot=pivot, lam=lam, conjugator=h)


def is_corner(f: PLMap) -> bool:
    """True iff every node of f lies in [x_f, α·x_f)."""
    require_in_F(f)
    profile = node_profile(f)
    return profile.largest < first_slope(f) * profile.smallest


def corner_level(f: PLMap) -> int:
    """The n with y_f ∈ [fⁿ(x_f), f^{n+1}(x_f)); zero exactly for corner functions."""
    require_in_F(f)
    profile = node_profile(f)
    top, t, n = profile.largest, profile.smallest, 0
    while evaluate(f, t) <= top:
        t = evaluate(f, t)
        n += 1
    return n


def corner_reduce(f: PLMap, max_steps: Optional[int] = None) -> Tuple[PLMap, PLMap]:
    """
    Conjugate f to a corner function by repeated elementary conjugation.

    Args:
        f: map in F.
        max_steps: safety cap on elementary conjugations; defaults to the
            ``conjugacy.max_elementary_steps`` config value.

    Returns:
        tuple: (corner, witness) with corner = witness∘f∘witness⁻¹.

    Raises:
        NotInFError: f is not in F.
        InternalInvariantError: the cap was reached.
    """
    require_in_F(f)
    cap = cfg.conjugacy.max_elementary_steps if max_steps is None else max_steps
    current, witness = f, identity()
    steps = 0
    while not is_corner(current):
        if steps >= cap:
            raise InternalInvariantError(
                f"corner reduction did not finish within {cap} elementary conjugations"
            )
        current, step = elementary_conjugation(current)
        witness = compose(step.conjugator, witness)
        steps += 1
    logger.info("Corner reduction finished after %d elementary conjugations (%d nodes)",
                steps, current.node_count)
    return current, witness


def node_word(f: PLMap) -> Tuple[MarkedPair, ...]:
    """
    (star, gap) sequence of a corner function in node order, first node at x_f.

    Gaps run from each node to the next, the last one wrapping through alpha.
    """
    if not is_corner(f):
        raise InvalidInputError("node words are defined for corner functions only")
    profile = node_profile(f)
    zs = profile.nodes
    gaps = [nxt / cur for cur, nxt in zip(zs, zs[1:])]
    gaps.append(first_slope(f) * zs[0] / zs[-1])
    return tuple(zip(profile.stars, gaps))


def corner_from_profile(profile: BetaProfile) -> PLMap:
    """
    Rebuild the corner function with the given alpha and marked sequence.

    The sequence is read in stored order with its first pair placed at x_f. Node
    i sits at x·g_i with g_i the product of the preceding gaps, and the slope
    after it is the previous slope times v_i. The scale x is the one for which
    the map reaches (1,1).

    Raises:
        InvalidProfileError: the profile breaks a precondition or does not
            describe a corner function.
    """
    a, marked = Fraction(profile.alpha), tuple(profile.marked)
    if a <= 1:
        raise InvalidProfileError(f"alpha must exceed 1, got {a}")
    if not marked:
        raise InvalidProfileError("profile has no marked points")
    if any(v <= 0 or v == ONE for v, _ in marked):
        raise InvalidProfileError("marked values must be positive and different from 1")
    if any(r <= 1 for _, r in marked):
        raise InvalidProfileError("gaps must exceed 1")

    gap_product, value_product = ONE, ONE
    for v, r in marked:
        gap_product *= r
        value_product *= v
    if gap_product != a:
        raise InvalidProfileError(f"gaps multiply to {gap_product}, expected alpha = {a}")
    if value_product >= 1:
        raise InvalidProfileError(f"marked values multiply to {value_product}, expected < 1")

    # positions g_i and heights c_i, both as multiples of the unknown scale x
    positions: List[Fraction] = [ONE]
    heights: List[Fraction] = [a]
    slope = a
    for i, (v, r) in enumerate(marked):
        slope *= v
        if i + 1 < len(marked):
            nxt = positions[-1] * r
            heights.append(heights[-1] + slope * (nxt - positions[-1]))
            positions.append(nxt)

    denom = heights[-1] - slope * positions[-1]
    if denom == 0:
        raise InvalidProfileError("profile does not determine a scale")
    x = (1 - slope) / denom
    if x <= 0 or x * positions[-1] >= 1:
        raise InvalidProfileError(f"profile yields nodes outside (0,1) (scale {x})")

    points = [(0, 0)] + [(x * g, x * c) for g, c in zip(positions, heights)] + [(1, 1)]
    try:
        f = normalize(points)
    except InvalidInputError as e:
        raise InvalidProfileError(f"profile does not describe a homeomorphism: {e}") from e
    if not is_in_F(f) or not is_corner(f):
        raise InvalidProfileError("profile does not describe a corner function in F")
    return f


def verify_conjugacy(f: PLMap, g: PLMap, w: PLMap) -> bool:
    """True iff w∘f∘w⁻¹ equals g exactly."""
    return equal(compose(compose(w, f), inverse(w)), g)


def _align_corners(cf: PLMap, cg: PLMap) -> PLMap:
    """Cycle the nodes of cf until it equals cg; return the accumulated conjugator."""
    target = node_word(cg)
    current, conjugator = cf, identity()
    for k in range(len(target)):
        if node_word(current) == target:
            logger.debug("Node words align after %d cycling steps", k)
            if equal(current, cg):
                return conjugator
            logger.warning("Node words align at offset %d but corner functions differ", k)
        current, step = elementary_conjugation(current)
        conjugator = compose(step.conjugator, conjugator)
    raise InternalInvariantError(
        f"no rotation of {cf!r} matches {cg!r} although their invariants agree"
    )


def decide_conjugacy(f: PLMap, g: PLMap, max_steps: Optional[int] = None) -> ConjugacyOutcome:
    """
    Decide whether f, g ∈ F are conjugate and, if so, build a witness.

    1. Compare alphas.
    2. Reduce both maps to corner functions.
    3. Compare the canonical marked words.
    4. Cycle the nodes of one corner function onto the other.
    5. Chain the conjugators into w = hg⁻¹∘hc∘hf, so that g = w∘f∘w⁻¹.

    Raises:
        NotInFError: either input is not in F.
        InternalInvariantError: alignment or witness verification failed.
    """
    require_in_F(f)
    require_in_F(g)

    alpha_f, alpha_g = alpha(f), alpha(g)
    if alpha_f != alpha_g:
        logger.info("Not conjugate: alpha %s != %s", alpha_f, alpha_g)
        return ConjugacyOutcome(reason=MismatchReason(
            kind=MismatchKind.ALPHA, alpha_f=alpha_f, alpha_g=alpha_g
        ))

    cf, hf = corner_reduce(f, max_steps=max_steps)
    cg, hg = corner_reduce(g, max_steps=max_steps)

    profile_f, profile_g = beta_profile(cf), beta_profile(cg)
    if not beta_equal(profile_f, profile_g):
        logger.info("Not conjugate: beta profiles differ")
        return ConjugacyOutcome(reason=MismatchReason(
            kind=MismatchKind.BETA, profile_f=profile_f, profile_g=profile_g
        ))

    hc = _align_corners(cf, cg)
    witness = compose(inverse(hg), compose(hc, hf))
    if not verify_conjugacy(f, g, witness):
        raise InternalInvariantError("synthesized witness does not conjugate f to g")
    logger.info("Conjugate: witness with %d nodes", witness.node_count)
    return ConjugacyOutcome(witness=witness)


class ConjugacySolver:
    """
    Corner reduction and conjugacy decisions bound to one configuration.

    Attributes:
        cfg (Config): configuration the solver was built with.
        max_steps (int): cap on elementary conjugations per corner reduction.
    """
    def __init__(self, config: Config):
        self.cfg = config
        self.max_steps = self.cfg.conjugacy.max_elementary_steps
        logger.debug("Conjugacy solver capped at %d elementary steps", self.max_steps)

    def corner(self, f: PLMap) -> Tuple[PLMap, PLMap]:
        return corner_reduce(f, max_steps=self.max_steps)

    def decide(self, f: PLMap, g: PLMap) -> ConjugacyOutcome:
        return decide_conjugacy(f, g, max_steps=self.max_steps)
