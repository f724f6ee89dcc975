from django.core.management.base import BaseCommand, CommandError

from weighting.dcs import find_dcs, verify_dcs
from weighting.exceptions import WeightingError
from weighting.formats import dump_edge_set, load_dcs_instance, load_edge_set

from ._common import (
    FAILED_CHECK,
    add_output_argument,
    add_seed_argument,
    add_solver_arguments,
    read_artifact,
    usage_error,
    write_output,
)


class Command(BaseCommand):
    help = "Solve or check degree-constrained subgraph instances with modular targets"

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        solve = actions.add_parser("solve", help="Search a witness edge set")
        solve.add_argument("instance")
        add_seed_argument(solve)
        add_solver_arguments(solve)
        add_output_argument(solve)

        check = actions.add_parser("verify", help="Check a witness edge set")
        check.add_argument("instance")
        check.add_argument("edges")

    def handle(self, *args, **options):
        g, targets = read_artifact(options["instance"], load_dcs_instance)
        try:
            if options["action"] == "solve":
                result = find_dcs(
                    g,
                    targets,
                    budget=options["dcs_budget"],
                    exact_threshold=options["exact_threshold"],
                    seed=options["seed"],
                    restarts=options["restarts"],
                )
                self.stderr.write(
                    f"{result.status} by {result.method} search in {result.steps} steps"
                )
                if not result.ok:
                    for diagnostic in result.diagnostics:
                        self.stderr.write(self.style.ERROR(str(diagnostic)))
                    raise CommandError(result.status, returncode=FAILED_CHECK)
                write_output(self, dump_edge_set(result.edges), options["output"])
                return

            edges = read_artifact(options["edges"], load_edge_set)
            ok, diagnostics = verify_dcs(g, edges, targets)
        except WeightingError as exc:
            raise usage_error(exc) from exc

        if ok:
            self.stdout.write(self.style.SUCCESS("valid"))
            return
        for diagnostic in diagnostics:
            self.stderr.write(self.style.ERROR(str(diagnostic)))
        raise CommandError("witness fails its constraints", returncode=FAILED_CHECK)
