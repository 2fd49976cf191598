from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from src.models.plmap import PLMap
from src.models.invariants import BetaProfile


@dataclass(frozen=True)
class ElementaryStep:
    """One elementary conjugation: ``conjugator`` has its single node at ``pivot`` with f* = ``lam``."""
    pivot: Fraction
    lam: Fraction
    conjugator: PLMap


class MismatchKind(str, Enum):
    ALPHA = "alpha_mismatch"
    BETA = "beta_mismatch"


@dataclass(frozen=True)
class MismatchReason:
    kind: MismatchKind
    alpha_f: Optional[Fraction] = None
    alpha_g: Optional[Fraction] = None
    profile_f: Optional[BetaProfile] = None
    profile_g: Optional[BetaProfile] = None


@dataclass(frozen=True)
class ConjugacyOutcome:
    """Either a witness ``w`` with g = w∘f∘w⁻¹ or the reason the maps are not conjugate."""
    witness: Optional[PLMap] = None
    reason: Optional[MismatchReason] = None

    @property
    def conjugate(self) -> bool:
        return self.witness is not None
