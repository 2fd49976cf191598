import re
from fractions import Fraction
from typing import Annotated, Any, List, Optional, Tuple

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(value: Any) -> Fraction:
    """Accept "p/q" or integer strings; lowest terms are not required on input."""
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"rationals must be written as strings, got {type(value).__name__}")
    if not _RATIONAL.fullmatch(value):
        raise ValueError(f"not a rational of the form p/q: {value!r}")
    num, _, den = value.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(int(num), int(den) if den else 1)


RationalStr = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(lambda q: str(q), return_type=str),
]


class MapDocument(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    breakpoints: List[Tuple[RationalStr, RationalStr]]


class MarkedPointReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: RationalStr
    gap: RationalStr


class BetaReport(BaseModel):
    marked: List[MarkedPointReport]


class InvariantReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    alpha: RationalStr
    beta: BetaReport


class NodeReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    node: RationalStr
    star: RationalStr


class DecisionReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    conjugate: bool
    witness: Optional[MapDocument] = None
    reason: Optional[str] = None
    alpha_f: Optional[RationalStr] = None
    alpha_g: Optional[RationalStr] = None
    profile_f: Optional[InvariantReport] = None
    profile_g: Optional[InvariantReport] = None


class CanonicalKey(BaseModel):
    """Text fingerprint of (alpha, canonical marked word); equal exactly for conjugate maps in F."""
    model_config = ConfigDict(frozen=True)

    text: str

    def __str__(self) -> str:
        return self.text


class ConjugacyClassReport(BaseModel):
    key: str
    members: List[str]
