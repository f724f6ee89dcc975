from django.conf import settings
from django.core.management.base import BaseCommand

from weighting.exceptions import WeightingError
from weighting.graphs import (
    generate_bipartite_gnp,
    generate_complete,
    generate_complete_bipartite,
    generate_cycle,
    generate_gnp,
    generate_regular,
    serialize_edge_list,
)

from ._common import add_output_argument, add_seed_argument, usage_error, write_output


class Command(BaseCommand):
    help = "Generate a graph in the edge-list format"

    def add_arguments(self, parser):
        kinds = parser.add_subparsers(dest="kind", required=True)

        complete = kinds.add_parser("complete", help="Complete graph K_k")
        complete.add_argument("--k", type=int, required=True)

        gnp = kinds.add_parser("gnp", help="Erdos-Renyi G(n, p)")
        gnp.add_argument("--n", type=int, required=True)
        gnp.add_argument("--p", type=float, required=True)
        add_seed_argument(gnp)

        regular = kinds.add_parser("regular", help="Random d-regular graph")
        regular.add_argument("--n", type=int, required=True)
        regular.add_argument("--d", type=int, required=True)
        regular.add_argument(
            "--max-attempts",
            type=int,
            default=settings.WEIGHTING_REGULAR_MAX_ATTEMPTS,
        )
        regular.add_argument(
            "--strict",
            action="store_true",
            help="Reject whole pairings (uniform, small d only)",
        )
        add_seed_argument(regular)

        bipartite = kinds.add_parser(
            "bipartite",
            help="Bipartite graph on a + b vertices, complete unless --p is given",
        )
        bipartite.add_argument("--a", type=int, required=True)
        bipartite.add_argument("--b", type=int, required=True)
        bipartite.add_argument("--p", type=float, default=None)
        add_seed_argument(bipartite)

        cycle = kinds.add_parser("cycle", help="Cycle C_n")
        cycle.add_argument("--n", type=int, required=True)

        for sub in (complete, gnp, regular, bipartite, cycle):
            add_output_argument(sub)

    def handle(self, *args, **options):
        kind = options["kind"]
        try:
            if kind == "complete":
                g = generate_complete(options["k"])
            elif kind == "gnp":
                g = generate_gnp(options["n"], options["p"], options["seed"])
            elif kind == "regular":
                g = generate_regular(
                    options["n"],
                    options["d"],
                    options["seed"],
                    max_attempts=options["max_attempts"],
                    strict=options["strict"],
                )
            elif kind == "bipartite":
                if options["p"] is None:
                    g = generate_complete_bipartite(options["a"], options["b"])
                else:
                    g = generate_bipartite_gnp(
                        options["a"], options["b"], options["p"], options["seed"]
                    )
            else:
                g = generate_cycle(options["n"])
        except WeightingError as exc:
            raise usage_error(exc) from exc

        write_output(self, serialize_edge_list(g), options["output"])
        if options["output"]:
            self.stdout.write(
                self.style.SUCCESS(
                    f"Wrote {kind} graph with {g.n} vertices and {g.m} edges "
                    f"to {options['output']}"
                )
            )
