from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from weighting.exceptions import WeightingError
from weighting.formats import dump_certificate, dump_weights
from weighting.oracle import brute_force_22, brute_force_nsd

from ._common import FAILED_CHECK, add_output_argument, read_graph, usage_error, write_output


class Command(BaseCommand):
    help = "Exhaustive searches on small graphs"

    def add_arguments(self, parser):
        searches = parser.add_subparsers(dest="search", required=True)

        nsd = searches.add_parser(
            "nsd", help="First NSD weighting from {1..k} in lexicographic order"
        )
        nsd.add_argument("graph")
        nsd.add_argument("--k", type=int, required=True)
        nsd.add_argument(
            "--brute-threshold",
            type=int,
            default=settings.WEIGHTING_BRUTE_THRESHOLD,
            help="Refuse instances with more than this many weightings",
        )
        add_output_argument(nsd)

        std22 = searches.add_parser(
            "std22",
            help="First split into two {1,2}-weight colourable subgraphs",
        )
        std22.add_argument("graph")
        std22.add_argument(
            "--max-edges",
            type=int,
            default=settings.WEIGHTING_BRUTE22_MAX_EDGES,
        )
        add_output_argument(std22)

    def handle(self, *args, **options):
        g = read_graph(options["graph"])
        try:
            if options["search"] == "nsd":
                found = brute_force_nsd(
                    g, options["k"], threshold=options["brute_threshold"]
                )
                text = None if found is None else dump_weights(dict(enumerate(found)))
            else:
                found = brute_force_22(g, max_edges=options["max_edges"])
                text = None if found is None else dump_certificate(found)
        except WeightingError as exc:
            raise usage_error(exc) from exc

        if text is None:
            self.stdout.write("none")
            raise CommandError("no witness exists", returncode=FAILED_CHECK)
        write_output(self, text, options["output"])
