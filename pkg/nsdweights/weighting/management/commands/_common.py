"""Helpers shared by the weighting management commands."""

from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError

from weighting.exceptions import FormatError, GraphError, WeightingError
from weighting.graphs import load_edge_list
from weighting.utils import parse_rational

# Exit codes
FAILED_CHECK = 1
USAGE = 2


def read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}", returncode=USAGE) from exc


def read_graph(path):
    try:
        return load_edge_list(read_text(path))
    except GraphError as exc:
        raise CommandError(f"{path}: {exc}", returncode=USAGE) from exc


def read_artifact(path, loader):
    """Run a formats loader on a file, turning its errors into usage errors."""
    try:
        return loader(read_text(path))
    except (FormatError, GraphError) as exc:
        raise CommandError(f"{path}: {exc}", returncode=USAGE) from exc


def write_output(command, text, path):
    """Write to path, or to the command's stdout when no path is given."""
    if path is None:
        command.stdout.write(text, ending="")
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot write {path}: {exc}", returncode=USAGE) from exc


def usage_error(exc):
    return CommandError(str(exc), returncode=USAGE)


def rational(value):
    try:
        return parse_rational(value)
    except WeightingError as exc:
        raise CommandError(str(exc), returncode=USAGE) from exc


def add_output_argument(parser):
    parser.add_argument(
        "-o",
        "--output",
        default=None,
        help="Output file (default: standard output)",
    )


def add_seed_argument(parser):
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.WEIGHTING_SEED,
        help="Master seed; fixes every random choice",
    )


def add_solver_arguments(parser):
    parser.add_argument(
        "--dcs-budget",
        type=int,
        default=settings.WEIGHTING_DCS_BUDGET,
        help="Step budget of the degree-constrained subgraph solver",
    )
    parser.add_argument(
        "--exact-threshold",
        type=int,
        default=settings.WEIGHTING_DCS_EXACT_THRESHOLD,
        help="Use exact search when the instance has at most this many edges",
    )
    parser.add_argument(
        "--restarts",
        type=int,
        default=settings.WEIGHTING_DCS_RESTARTS,
        help="Local-search restarts",
    )
