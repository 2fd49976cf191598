from dataclasses import dataclass

from src.errors import GenConfigError

SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_nodes: int = 8
    denominator_bound: int = 64

    def __post_init__(self):
        if not 0 <= self.seed < SEED_LIMIT:
            raise GenConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.max_nodes < 0:
            raise GenConfigError(f"max_nodes must be >= 0, got {self.max_nodes}")
        if self.denominator_bound < 2:
            raise GenConfigError(
                f"denominator_bound must be >= 2, got {self.denominator_bound}"
            )
