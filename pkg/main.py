import os
import sys
import argparse
import logging
from typing import List, Optional

from dotenv import load_dotenv

# .env may point PLCONJ_CONFIG elsewhere; services read it on import
load_dotenv()

from src.errors import InternalInvariantError, InvalidInputError
from src.models.config import load_config
from src.models.generate import GenConfig
from src.models.plmap import PLMap
from src.services.conjugacy import ConjugacySolver, corner_from_profile
from src.services.generate import corpus
from src.services.interface import (
    Classifier,
    invariant_report,
    node_report,
    parse_map,
    parse_report,
    plot_samples,
    render_classes,
    render_outcome,
    render_plot_csv,
    serialize_map,
)
from src.services.plmap import compose, evaluate, inverse, orient_into_F, power
from src.models.documents import parse_rational
from src.logger import set_level, setup_console_and_file_logging

EXIT_OK = 0
EXIT_NOT_CONJUGATE = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

cfg = load_config()
logger = setup_console_and_file_logging(level=cfg.logging.level,
                                        logger_name="plconj",
                                        log_file=cfg.logging.log_file)

# Initialize services
solver = ConjugacySolver(config=cfg)
classifier = Classifier(config=cfg)


def configure_verbosity(verbose: int) -> None:
    """-v and -vv win over PLCONJ_LOG_LEVEL, which wins over the config file."""
    if verbose:
        set_level(logging.DEBUG if verbose > 1 else logging.INFO)
    elif os.environ.get('PLCONJ_LOG_LEVEL'):
        set_level(os.environ['PLCONJ_LOG_LEVEL'].upper())


def read_map(path: str) -> PLMap:
    with open(path, 'rb') as f:
        return parse_map(f.read())


def write_map(path: str, f: PLMap) -> None:
    with open(path, 'wb') as out:
        out.write(serialize_map(f) + b"\n")
    logger.info("Wrote map to %s", path)


def emit(data: bytes) -> None:
    sys.stdout.write(data.decode("utf-8") + "\n")


def into_F(f: PLMap, mirrored: bool) -> PLMap:
    if not mirrored:
        return f
    return orient_into_F(f)[0]


def cmd_validate(args) -> int:
    emit(serialize_map(read_map(args.file)))
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        x = parse_rational(args.x)
    except ValueError as e:
        raise InvalidInputError(str(e)) from e
    print(evaluate(read_map(args.file), x))
    return EXIT_OK


def cmd_compose(args) -> int:
    emit(serialize_map(compose(read_map(args.f), read_map(args.g))))
    return EXIT_OK


def cmd_invert(args) -> int:
    emit(serialize_map(inverse(read_map(args.f))))
    return EXIT_OK


def cmd_pow(args) -> int:
    emit(serialize_map(power(read_map(args.f), args.n)))
    return EXIT_OK


def cmd_nodes(args) -> int:
    emit(node_report(read_map(args.f)))
    return EXIT_OK


def cmd_invariants(args) -> int:
    emit(invariant_report(into_F(read_map(args.f), args.mirrored)))
    return EXIT_OK


def cmd_corner(args) -> int:
    corner, witness = solver.corner(into_F(read_map(args.f), args.mirrored))
    emit(serialize_map(corner))
    if args.witness:
        write_map(args.witness, witness)
    return EXIT_OK


def cmd_decide(args) -> int:
    f = into_F(read_map(args.f), args.mirrored)
    g = into_F(read_map(args.g), args.mirrored)
    outcome = solver.decide(f, g)
    emit(render_outcome(outcome))
    if outcome.conjugate and args.witness:
        write_map(args.witness, outcome.witness)
    return EXIT_OK if outcome.conjugate else EXIT_NOT_CONJUGATE


def cmd_classify(args) -> int:
    named = [(path, read_map(path)) for path in args.files]
    emit(render_classes(classifier.run(named, workers=args.workers)))
    return EXIT_OK


def cmd_random(args) -> int:
    gen = GenConfig(seed=args.seed, max_nodes=args.nodes, denominator_bound=args.denom_bound)
    for f in corpus(gen, args.count, kind=args.kind):
        emit(serialize_map(f))
    return EXIT_OK


def cmd_plot(args) -> int:
    sys.stdout.write(render_plot_csv(plot_samples(read_map(args.f), args.samples)))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    with open(args.report, 'rb') as f:
        profile = parse_report(f.read())
    emit(serialize_map(corner_from_profile(profile)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plconj",
        description="Exact conjugacy invariants and conjugator witnesses for PL homeomorphisms of [0,1]",
    )
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="-v for INFO, -vv for DEBUG logging on stderr")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', help="parse a map file and print its canonical form")
    p.add_argument('file')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('eval', help="evaluate a map at a rational point")
    p.add_argument('file')
    p.add_argument('x')
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser('compose', help="print F∘G")
    p.add_argument('f')
    p.add_argument('g')
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser('invert', help="print the inverse map")
    p.add_argument('f')
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser('pow', help="print the N-th iterate (negative N iterates the inverse)")
    p.add_argument('f')
    p.add_argument('n', type=int)
    p.set_defaults(func=cmd_pow)

    p = sub.add_parser('nodes', help="list nodes with their f* values")
    p.add_argument('f')
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser('invariants', help="print alpha and the canonical beta word")
    p.add_argument('f')
    p.add_argument('--mirrored', action='store_true', help="accept maps below the diagonal by inverting them")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser('corner', help="conjugate to a corner function")
    p.add_argument('f')
    p.add_argument('--witness', metavar='OUT')
    p.add_argument('--mirrored', action='store_true')
    p.set_defaults(func=cmd_corner)

    p = sub.add_parser('decide', help="decide conjugacy; exit 0 conjugate, 1 not conjugate")
    p.add_argument('f')
    p.add_argument('g')
    p.add_argument('--witness', metavar='OUT')
    p.add_argument('--mirrored', action='store_true')
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser('classify', help="group map files into conjugacy classes")
    p.add_argument('files', nargs='+')
    p.add_argument('--workers', type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser('random', help="generate seeded random maps")
    p.add_argument('--seed', type=int, default=cfg.generator.seed)
    p.add_argument('--nodes', type=int, default=cfg.generator.max_nodes)
    p.add_argument('--denom-bound', type=int, default=cfg.generator.denominator_bound)
    p.add_argument('--kind', choices=['F', 'homeo'], default='F')
    p.add_argument('--count', type=int, default=1)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser('plot', help="CSV samples of the graph")
    p.add_argument('f')
    p.add_argument('--samples', type=int, default=cfg.plot.samples)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser('reconstruct', help="corner function from an invariant report")
    p.add_argument('report')
    p.set_defaults(func=cmd_reconstruct)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_verbosity(args.verbose)
    try:
        return args.func(args)
    except (InvalidInputError, OSError) as e:
        logger.error("%s: %s", args.command, e)
        return EXIT_INVALID
    except InternalInvariantError as e:
        logger.error("%s: internal invariant violated: %s", args.command, e)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
