from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

NodeEntry = Tuple[Fraction, Fraction]
MarkedPair = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class NodeProfile:
    """Nodes of a map in increasing order, each with its f* value (never 1)."""
    entries: Tuple[NodeEntry, ...]

    @property
    def nodes(self) -> Tuple[Fraction, ...]:
        return tuple(z for z, _ in self.entries)

    @property
    def stars(self) -> Tuple[Fraction, ...]:
        return tuple(s for _, s in self.entries)

    @property
    def smallest(self) -> Fraction:
        return self.entries[0][0]

    @property
    def largest(self) -> Fraction:
        return self.entries[-1][0]


@dataclass(frozen=True)
class BetaProfile:
    """
    Conjugacy fingerprint of a map in F.

    ``marked`` is the cyclic sequence of (value, gap) pairs: value is the orbit
    product at a marked point of the fundamental domain, gap is the ratio from
    that point to the next one (the last gap wraps around through alpha). The
    sequence is kept in canonical (lexicographically least) rotation by
    ``src.services.invariants``, except where a caller builds a profile in an
    explicit node order for reconstruction.
    """
    alpha: Fraction
    marked: Tuple[MarkedPair, ...]

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return tuple(v for v, _ in self.marked)

    @property
    def gaps(self) -> Tuple[Fraction, ...]:
        return tuple(r for _, r in self.marked)
