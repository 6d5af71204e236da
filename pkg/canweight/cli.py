"""Command-line interface: ``canweight classify|weight|cone|deform|batch``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from contextlib import contextmanager
from pathlib import Path

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def print_styled(text: str, style: str = "default") -> None:
    """Print to stderr with a status color."""
    colors = {"error": "red", "warning": "yellow", "info": "blue", "success": "green"}
    if style in colors:
        err_console.print(f"[{colors[style]}]{text}[/{colors[style]}]")
    else:
        err_console.print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canweight",
        description="Canonical weights of isolated hypersurface singularities from exponent supports.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="polynomial text (e.g. 'x0^2+x1^4+x2^4') or a .txt/.json file")
        p.add_argument("--dim", type=int, help="number of variables for text input")
        p.add_argument("--json", action="store_true", help="emit the JSON report")

    p = sub.add_parser("classify", help="canonical / log-canonical / not log-canonical")
    add_input(p)
    p.add_argument("--assume-nondegenerate", action="store_true")

    p = sub.add_parser("weight", help="find the canonical weight")
    add_input(p)
    p.add_argument("--assume-nondegenerate", action="store_true")
    p.add_argument("--candidate", help="test a weight for f-minimality, e.g. 2,1,2,1")
    p.add_argument("--blowup", help="report discrepancies of the weighted blow-up with this weight")
    p.add_argument("--probe", action="append", default=[], help="extra divisor weight for --blowup")
    p.add_argument("--cap", type=int, help="coordinate-sum bound for the candidate search")

    p = sub.add_parser("cone", help="dump the essential cone")
    add_input(p)
    p.add_argument("--probe", action="append", default=[], help="weight to test for membership")

    p = sub.add_parser("deform", help="check a family file")
    p.add_argument("input", help="family JSON file")
    p.add_argument("--json", action="store_true", help="emit the JSON report")

    p = sub.add_parser("batch", help="weight verdicts for every .txt/.json file in a directory")
    p.add_argument("input", help="directory")
    p.add_argument("--dim", type=int, help="number of variables for .txt files without a header")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--assume-nondegenerate", action="store_true")
    p.add_argument("--cap", type=int, help="coordinate-sum bound for the candidate search")
    return parser


def setup_logging(verbosity: int, default_level: str) -> None:
    level = {0: default_level.upper(), 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@contextmanager
def reading_input():
    """Domain errors raised while reading arguments and files are input errors."""
    from .exceptions import DomainError, InputError

    try:
        yield
    except DomainError as e:
        raise InputError(str(e), e) from e


def read_input(text: str, dim: int | None, settings):
    from .support import load_polynomial, parse_polynomial
    from .exceptions import InputError

    path = Path(text)
    if path.suffix in (".txt", ".json") and path.exists():
        return load_polynomial(path, dim, settings)
    if dim is None:
        raise InputError("Text input needs a dimension: pass --dim.")
    return parse_polynomial(text, dim, settings)


def read_weight(text: str, dim: int, positive: bool = False):
    """Parse a weight argument; blow-up centers and candidates must be positive and primitive."""
    from .exceptions import InputError
    from .support import parse_weight

    w = parse_weight(text, dim)
    if positive and (any(x <= 0 for x in w) or not w.primitive):
        raise InputError(f"Weight {w} must be primitive with positive entries.")
    if not positive and (any(x < 0 for x in w) or w.is_zero):
        raise InputError(f"Weight {w} must be nonzero with nonnegative entries.")
    return w


def cmd_classify(args, settings):
    from .newton import build_newton, classify
    from .report import classification_report

    with reading_input():
        f = read_input(args.input, args.dim, settings)
    np = build_newton(f)
    cls = classify(f, args.assume_nondegenerate, np)
    return classification_report(f, cls, np, settings)


def cmd_weight(args, settings):
    from .report import blowup_payload, weight_report
    from .weights import (
        canonical_weight_verdict,
        discrepancies,
        is_f_minimal,
        is_minus_k_cubed,
        leading_coefficient,
    )

    with reading_input():
        f = read_input(args.input, args.dim, settings)
        candidate = read_weight(args.candidate, f.dim, positive=True) if args.candidate else None
        center = read_weight(args.blowup, f.dim, positive=True) if args.blowup else None
        probes = [read_weight(w, f.dim) for w in args.probe]

    verdict = canonical_weight_verdict(f, args.assume_nondegenerate, args.cap, settings)
    certificate = None
    if candidate is not None:
        _, certificate = is_f_minimal(candidate, f, settings)
    blowup = None
    if center is not None:
        targets = list(verdict.hilbert) + probes
        records = discrepancies(center, f, list(dict.fromkeys(targets)))
        blowup = blowup_payload(center, records, leading_coefficient(center), is_minus_k_cubed(center, f))
    return weight_report(f, verdict, certificate, blowup)


def cmd_cone(args, settings):
    from .report import cone_report
    from .weights import essential_cone

    with reading_input():
        f = read_input(args.input, args.dim, settings)
        probes = [read_weight(w, f.dim) for w in args.probe]
    return cone_report(f, essential_cone(f), probes, settings)


def cmd_deform(args, settings):
    from .deformation import load_family, simultaneous_report
    from .exceptions import InputError
    from .report import deformation_report

    with reading_input():
        family, weight = load_family(args.input, settings)
        if weight is None:
            raise InputError(f"{args.input} needs a 'weight'.")
        if any(x <= 0 for x in weight):
            raise InputError(f"Family weight {weight} must have positive entries.")
    simultaneous = None
    if len(family.members) >= 2:
        simultaneous = simultaneous_report(
            family.members[0], family.members[-1], weight, settings=settings
        )
    return deformation_report(family, weight, simultaneous)


def cmd_batch(args, settings):
    from .batch import run_batch

    return run_batch(args.input, args.dim, args.assume_nondegenerate, args.cap, settings)


COMMANDS = {
    "classify": cmd_classify,
    "weight": cmd_weight,
    "cone": cmd_cone,
    "deform": cmd_deform,
    "batch": cmd_batch,
}


def main(argv: Sequence[str] | None = None) -> int:
    """CLI entry point; returns the exit code."""
    load_dotenv()

    # Lazy import to keep --help fast
    from pydantic import ValidationError

    from .config import get_settings
    from .exceptions import (
        CanweightError,
        ConfigurationError,
        DomainError,
        EnumerationLimitError,
        InputError,
        InvariantViolationError,
    )
    from .report import render, to_json

    args = build_parser().parse_args(argv)
    # Input problems exit 2; anything raised while computing exits 3
    try:
        try:
            settings = get_settings()
        except ValidationError as e:
            raise ConfigurationError(f"Invalid CANWEIGHT_ settings: {e}", e) from e
        setup_logging(args.verbose, settings.log_level)
        report = COMMANDS[args.command](args, settings)
    except (InputError, ConfigurationError) as e:
        print_styled(f"Error: {e}", "error")
        return EXIT_INPUT
    except InvariantViolationError as e:
        print_styled(f"Internal invariant violated: {e}", "error")
        return EXIT_INTERNAL
    except EnumerationLimitError as e:
        print_styled(f"Enumeration limit: {e}", "error")
        return EXIT_INTERNAL
    except DomainError as e:
        print_styled(f"Error during computation: {e}", "error")
        return EXIT_INTERNAL
    except CanweightError as e:
        print_styled(f"Error: {e}", "error")
        return EXIT_INTERNAL

    if args.json:
        sys.stdout.write(to_json(report) + "\n")
    else:
        render(report, console)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
