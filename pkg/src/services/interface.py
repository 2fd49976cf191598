import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from src.errors import (
    BreakpointError,
    InvalidParameterError,
    MapParseError,
    ReportParseError,
)
from src.models.config import Config, load_config
from src.models.conjugacy import ConjugacyOutcome, MismatchKind
from src.models.documents import (
    BetaReport,
    CanonicalKey,
    ConjugacyClassReport,
    DecisionReport,
    InvariantReport,
    MapDocument,
    MarkedPointReport,
    NodeReport,
)
from src.models.invariants import BetaProfile
from src.models.plmap import PLMap
from src.services.invariants import beta_profile, node_profile
from src.services.plmap import evaluate, normalize
from src.logger import setup_console_and_file_logging

cfg = load_config()
logger = setup_console_and_file_logging(level=cfg.logging.level,
                                        logger_name=__name__,
                                        log_file=cfg.logging.log_file)

Text = Union[bytes, str]


def _dump(model) -> bytes:
    return model.model_dump_json(exclude_none=True).encode("utf-8")


def _load_json(text: Text, error_cls=MapParseError):
    try:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    except UnicodeDecodeError as e:
        raise error_cls("document is not valid UTF-8", f"byte {e.start}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise error_cls(f"syntax error: {e.msg}", f"line {e.lineno} column {e.colno}") from e


def _error_location(e: ValidationError) -> Tuple[str, str]:
    first = e.errors()[0]
    path = ""
    for part in first["loc"]:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return first["msg"], path


def parse_map(text: Text) -> PLMap:
    """
    Parse a map document {"breakpoints": [["x","y"], ...]} into a canonical PLMap.

    Raises:
        MapParseError: syntax, rational or breakpoint-invariant error; ``position``
            holds the JSON line/column or the path of the offending entry.
    """
    data = _load_json(text)
    try:
        doc = MapDocument.model_validate(data)
    except ValidationError as e:
        msg, where = _error_location(e)
        raise MapParseError(msg, where) from e

    pts = doc.breakpoints
    for i in range(1, len(pts)):
        if pts[i][0] <= pts[i - 1][0]:
            raise MapParseError("x not increasing", f"breakpoints[{i}]")
    try:
        return normalize(pts)
    except BreakpointError as e:
        raise MapParseError(str(e), "breakpoints") from e


def serialize_map(f: PLMap) -> bytes:
    """Compact canonical document; rationals in lowest terms, no whitespace."""
    return _dump(MapDocument(breakpoints=list(f.breakpoints)))


def _report(profile: BetaProfile) -> InvariantReport:
    return InvariantReport(
        alpha=profile.alpha,
        beta=BetaReport(marked=[MarkedPointReport(value=v, gap=r) for v, r in profile.marked]),
    )


def invariant_report(f: PLMap) -> bytes:
    return _dump(_report(beta_profile(f)))


def parse_report(text: Text) -> BetaProfile:
    """Read an invariant report back; the marked sequence is kept in the order written."""
    data = _load_json(text, error_cls=ReportParseError)
    try:
        report = InvariantReport.model_validate(data)
    except ValidationError as e:
        msg, where = _error_location(e)
        raise ReportParseError(msg, where) from e
    return BetaProfile(
        alpha=report.alpha,
        marked=tuple((m.value, m.gap) for m in report.beta.marked),
    )


def node_report(f: PLMap) -> bytes:
    nodes = [NodeReport(node=z, star=s) for z, s in node_profile(f).entries]
    return json.dumps([n.model_dump(mode="json") for n in nodes], separators=(",", ":")).encode("utf-8")


def canonical_key(f: PLMap) -> CanonicalKey:
    """Fingerprint of f ∈ F: the invariant report text."""
    return CanonicalKey(text=invariant_report(f).decode("utf-8"))


def render_outcome(outcome: ConjugacyOutcome) -> bytes:
    if outcome.conjugate:
        return _dump(DecisionReport(
            conjugate=True,
            witness=MapDocument(breakpoints=list(outcome.witness.breakpoints)),
        ))
    reason = outcome.reason
    if reason.kind is MismatchKind.ALPHA:
        return _dump(DecisionReport(conjugate=False, reason=reason.kind.value,
                                    alpha_f=reason.alpha_f, alpha_g=reason.alpha_g))
    return _dump(DecisionReport(conjugate=False, reason=reason.kind.value,
                                profile_f=_report(reason.profile_f),
                                profile_g=_report(reason.profile_g)))


def plot_samples(f: PLMap, n: int) -> List[Tuple[Fraction, Fraction]]:
    """Uniform grid (i/n, f(i/n)) merged with the breakpoints of f, sorted by x."""
    if n < 1:
        raise InvalidParameterError(f"sample count must be positive, got {n}")
    points: Dict[Fraction, Fraction] = dict(f.breakpoints)
    for i in range(n + 1):
        x = Fraction(i, n)
        points.setdefault(x, evaluate(f, x))
    return sorted(points.items())


def render_plot_csv(samples: Sequence[Tuple[Fraction, Fraction]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y"])
    for x, y in samples:
        writer.writerow([str(x), str(y)])
    return buf.getvalue()


def classify(named_maps: Sequence[Tuple[str, PLMap]], workers: int = 1) -> List[ConjugacyClassReport]:
    """
    Partition maps in F into conjugacy classes by canonical key.

    Classes and their members appear in input order. ``workers`` > 1 computes
    keys in a process pool.
    """
    maps = [f for _, f in named_maps]
    if workers > 1 and len(maps) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            keys = list(pool.map(canonical_key, maps))
    else:
        keys = [canonical_key(f) for f in maps]

    classes: Dict[CanonicalKey, List[str]] = {}
    for (name, _), key in zip(named_maps, keys):
        classes.setdefault(key, []).append(name)
    logger.info("Classified %d maps into %d conjugacy classes", len(maps), len(classes))
    return [ConjugacyClassReport(key=key.text, members=members) for key, members in classes.items()]


def render_classes(classes: List[ConjugacyClassReport]) -> bytes:
    return json.dumps([c.model_dump() for c in classes], separators=(",", ":")).encode("utf-8")


class Classifier:
    """Groups named maps into conjugacy classes with the configured worker count."""

    def __init__(self, config: Config):
        self.cfg = config
        self.workers = self.cfg.classify.workers

    def run(self, named_maps: Sequence[Tuple[str, PLMap]], workers: Optional[int] = None) -> List[ConjugacyClassReport]:
        return classify(named_maps, workers=self.workers if workers is None else workers)
