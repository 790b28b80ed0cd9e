"""
Command-line interface.

Subcommands: class, family, min-table, bounds, ent-face and verify. JSON
goes to stdout; diagnostics, errors and FLAG/FAIL lines go to stderr.
Exit status is 2 for invalid input, 1 when a verification suite has a
FAIL, and 0 otherwise.
"""

import argparse
import dataclasses
import logging
import sys
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

from . import __version__
from .cache import RootCache
from .config import (
    CACHE_ENV_VAR,
    CacheConfig,
    EngineConfig,
    PrecisionConfig,
    parse_width,
)
from .exceptions import DomainError, MagicFiberError, require
from .fillings import FamilyClass
from .homology import FiberedClass, check_cone
from .polyroot import RootEngine, pair_poly, set_engine, teichmuller_poly
from .report import (
    bounds_document,
    class_document,
    dumps,
    ent_scan_document,
    family_document,
    flag_lines,
    magic_ent_document,
    table_csv,
    table_document,
    verification_document,
)
from .tables import (
    ClaimVerifier,
    TableResult,
    as_family,
    delta_upper_bound,
    ent_face_scan,
    magic_ent_scan,
    min_lambda,
    verify_claims,
)

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, EngineConfig, RootEngine, TextIO], int]


def _width(text: str) -> int:
    try:
        return parse_width(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--width",
        type=_width,
        default=40,
        metavar="2^-N",
        help="width of certified brackets (default: 2^-40)",
    )
    common.add_argument(
        "--no-cache",
        action="store_true",
        help="do not read or write the root cache",
    )
    common.add_argument(
        "--cache",
        metavar="PATH",
        help=f"root cache file (default: ${CACHE_ENV_VAR} or ~/.cache/magic-fiber/roots.json)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        help="threads used to bracket candidates",
    )
    common.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    return common


def _genus_range(parser: argparse.ArgumentParser, default_from: int, default_to: int) -> None:
    parser.add_argument("--genus-from", type=int, default=default_from, help="first genus")
    parser.add_argument("--genus-to", type=int, default=default_to, help="last genus (inclusive)")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="magicfiber",
        description="Certified pseudo-Anosov dilatations on the magic manifold and its fillings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    sub = commands.add_parser(
        "class", parents=[common], help="invariants of a cone class (x, y, z)"
    )
    sub.add_argument("x", type=int)
    sub.add_argument("y", type=int)
    sub.add_argument("z", type=int)
    sub.set_defaults(handler=cmd_class)

    sub = commands.add_parser("family", parents=[common], help="invariants of a family class")
    sub.add_argument(
        "--fill",
        help="filling slope -3/2, -1/2 or 2, in place of the FAMILY value",
    )
    sub.add_argument(
        "values",
        nargs="+",
        metavar="FAMILY K L",
        help="family A, P or R and the pair (k, l); only K L when --fill is given",
    )
    sub.set_defaults(handler=cmd_family)

    sub = commands.add_parser("min-table", parents=[common], help="minimal dilatation per genus")
    sub.add_argument("--fill", required=True, help="filling slope -3/2, -1/2 or 2")
    _genus_range(sub, 3, 10)
    sub.add_argument("--orientable", action="store_true", help="orientable monodromies only")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.set_defaults(handler=cmd_min_table)

    sub = commands.add_parser(
        "bounds", parents=[common], help="upper bounds for minimal dilatations"
    )
    _genus_range(sub, 3, 10)
    sub.add_argument("--orientable", action="store_true", help="bound the orientable minimum")
    sub.set_defaults(handler=cmd_bounds)

    sub = commands.add_parser("ent-face", parents=[common], help="normalized entropy scans")
    sub.add_argument("--fill", default="-3/2", help="filling whose face is scanned")
    sub.add_argument("--max-denominator", type=int, default=12, help="largest k of s = l/k")
    sub.add_argument(
        "--cone",
        type=int,
        metavar="D",
        help="scan cone classes of N with coordinates up to D instead of a face",
    )
    sub.set_defaults(handler=cmd_ent_face)

    sub = commands.add_parser("verify", parents=[common], help="re-check the stated claims")
    sub.add_argument(
        "--suite",
        required=True,
        help=f"one of: {', '.join(ClaimVerifier.SUITES)}",
    )
    _genus_range(sub, 3, 50)
    sub.set_defaults(handler=cmd_verify)
    return parser


def _check_genus_range(args: argparse.Namespace) -> range:
    require(args.genus_from >= 2, "genus-from >= 2")
    require(args.genus_to >= args.genus_from, "genus-to >= genus-from")
    return range(args.genus_from, args.genus_to + 1)


def cmd_class(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    c = FiberedClass(args.x, args.y, args.z)
    check_cone(c)
    polynomial = teichmuller_poly(*c.coordinates)
    root = engine.largest_real_root(polynomial)
    out.write(dumps(class_document(c, root, polynomial, args.width)))
    return 0


def _family_arguments(args: argparse.Namespace) -> Tuple[str, int, int]:
    values = list(args.values)
    if args.fill is not None:
        require(len(values) == 2, "K L", f"expected K L after --fill, got {len(values)} values")
        name = args.fill
    else:
        require(len(values) == 3, "FAMILY K L", f"expected FAMILY K L, got {len(values)} values")
        name = values.pop(0)
    try:
        k, l = (int(v) for v in values)
    except ValueError:
        raise DomainError(f"k and l must be integers, got {values}", "k, l integers") from None
    return name, k, l


def cmd_family(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    name, k, l = _family_arguments(args)
    fc = FamilyClass(as_family(name), k, l)
    polynomial = pair_poly(fc.k, abs(fc.l))
    root = engine.largest_real_root(polynomial)
    out.write(dumps(family_document(fc, root, polynomial, args.width)))
    return 0


def cmd_min_table(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    family = as_family(args.fill)
    rows: List[TableResult] = [
        min_lambda(family, g, args.orientable, engine, config.workers)
        for g in _check_genus_range(args)
    ]
    if args.format == "csv":
        out.write(table_csv(rows, args.width))
    else:
        out.write(dumps(table_document(rows, args.width)))
    return 0


def cmd_bounds(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    bounds = [
        delta_upper_bound(g, args.orientable, engine, config.workers)
        for g in _check_genus_range(args)
    ]
    out.write(dumps(bounds_document(bounds, args.width)))
    return 0


def cmd_ent_face(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    if args.cone is not None:
        out.write(dumps(magic_ent_document(magic_ent_scan(args.cone, engine))))
        return 0
    family = as_family(args.fill)
    scan = ent_face_scan(family, args.max_denominator, engine)
    out.write(dumps(ent_scan_document(str(family.slope), scan)))
    return 0


def cmd_verify(
    args: argparse.Namespace, config: EngineConfig, engine: RootEngine, out: TextIO
) -> int:
    config = dataclasses.replace(config, genus_from=args.genus_from, genus_to=args.genus_to)
    report = verify_claims(args.suite, config, engine)
    out.write(dumps(verification_document(report, args.width)))
    for line in flag_lines(report):
        print(line, file=sys.stderr)
    return 0 if report.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Process exit status
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = EngineConfig(
            precision=PrecisionConfig(width_bits=args.width),
            cache=CacheConfig(path=args.cache, enabled=not args.no_cache),
            workers=args.workers,
        )
    except ValueError as e:
        parser.error(str(e))

    handler: Handler = args.handler
    with RootCache(config.cache) as cache:
        engine = RootEngine(config.precision, cache if config.cache.enabled else None)
        set_engine(engine)
        try:
            return handler(args, config, engine, sys.stdout)
        except (MagicFiberError, ValueError) as e:
            logger.debug(f"{args.command} failed", exc_info=True)
            print(f"magicfiber {args.command}: {e}", file=sys.stderr)
            return 2
        finally:
            set_engine(None)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
