from fractions import Fraction
from typing import List

from src.errors import GenConfigError, InternalInvariantError
from src.models.config import load_config
from src.models.generate import GenConfig
from src.models.plmap import PLMap
from src.services.plmap import is_in_F, normalize
from src.logger import setup_console_and_file_logging

app_cfg = load_config()
logger = setup_console_and_file_logging(level=app_cfg.logging.level,
                                        logger_name=__name__,
                                        log_file=app_cfg.logging.log_file)

MASK64 = (1 << 64) - 1
KINDS = ("F", "homeo")


class SplitMix64:
    """
    SplitMix64 generator (Steele, Lea, Flood).

    Fixed and portable: the same seed produces the same stream in any
    language with 64-bit unsigned arithmetic. Bounded draws use rejection on
    the raw 64-bit output so that they carry no modulo bias.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def sample_sorted(self, lo: int, hi: int, k: int) -> List[int]:
        """k distinct integers from [lo, hi], ascending (partial Fisher-Yates)."""
        pool = list(range(lo, hi + 1))
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])


def random_homeomorphism(cfg: GenConfig) -> PLMap:
    """
    Random element of PLF⁺([0,1]) with at most ``cfg.max_nodes`` nodes.

    Interior breakpoints are k distinct grid x-values and k distinct grid
    y-values (grid step 1/denominator_bound), both sorted and paired in order.
    """
    rng = SplitMix64(cfg.seed)
    bound = cfg.denominator_bound
    k = min(rng.between(0, cfg.max_nodes), bound - 1)
    xs = rng.sample_sorted(1, bound - 1, k)
    ys = rng.sample_sorted(1, bound - 1, k)
    points = [(0, 0)] + [(Fraction(x, bound), Fraction(y, bound)) for x, y in zip(xs, ys)] + [(1, 1)]
    return normalize(points)


def random_element_of_F(cfg: GenConfig) -> PLMap:
    """
    Random element of F with between 1 and ``cfg.max_nodes`` nodes.

    The k interior x grid values come from [1, B−2]; each y_i is then drawn above
    both x_i and y_{i−1}, leaving room for the breakpoints still to come.
    """
    if cfg.max_nodes < 1:
        raise GenConfigError("elements of F need max_nodes >= 1")
    bound = cfg.denominator_bound
    if bound < 3:
        raise GenConfigError("elements of F need denominator_bound >= 3")

    rng = SplitMix64(cfg.seed)
    k = min(rng.between(1, cfg.max_nodes), bound - 2)
    xs = rng.sample_sorted(1, bound - 2, k)
    ys: List[int] = []
    for i, x in enumerate(xs):
        lo = max(x, ys[-1] if ys else 0) + 1
        hi = bound - 1 - (k - 1 - i)
        ys.append(rng.between(lo, hi))

    points = [(0, 0)] + [(Fraction(x, bound), Fraction(y, bound)) for x, y in zip(xs, ys)] + [(1, 1)]
    f = normalize(points)
    if not is_in_F(f):
        raise InternalInvariantError(f"generator produced a map outside F for seed {cfg.seed}")
    return f


def corpus(cfg: GenConfig, count: int, kind: str = "F") -> List[PLMap]:
    """``count`` maps of the given kind, seeds drawn from a SplitMix64 stream started at cfg.seed."""
    if kind not in KINDS:
        raise GenConfigError(f"kind must be one of {KINDS}, got {kind!r}")
    make = random_element_of_F if kind == "F" else random_homeomorphism
    seeds = SplitMix64(cfg.seed)
    maps = [
        make(GenConfig(seed=seeds.next_u64(),
                       max_nodes=cfg.max_nodes,
                       denominator_bound=cfg.denominator_bound))
        for _ in range(count)
    ]
    logger.info("Generated %d maps of kind %s from seed %d", count, kind, cfg.seed)
    return maps
