import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from weighting.certificates import Verdict, build_certificate
from weighting.decomposer import apply_rules, knsq_assignment
from weighting.euler import balanced_split
from weighting.exceptions import PipelineError, WeightingError
from weighting.formats import dump_assignment, dump_bipartition, dump_certificate
from weighting.graphs import WHOLE_TAG, EdgeBipartition
from weighting.oracle import verify_certificate, verify_split
from weighting.weighter import (
    PipelineParams,
    chromatic_shortcut,
    colour_weighting,
    full_pipeline,
    search_nsd_weighting,
)

from ._common import (
    FAILED_CHECK,
    USAGE,
    add_output_argument,
    add_seed_argument,
    add_solver_arguments,
    rational,
    read_graph,
    usage_error,
    write_output,
)

logger = logging.getLogger(__name__)

MODES = ("pipeline", "chromatic", "euler", "knsq")


class Command(BaseCommand):
    help = "Decompose a graph into two {1,2}-weight colourable subgraphs"

    def add_arguments(self, parser):
        parser.add_argument("graph", help="Graph in the edge-list format")
        parser.add_argument("--mode", choices=MODES, default="pipeline")
        parser.add_argument("--q", default=settings.WEIGHTING_Q)
        parser.add_argument("--t", type=int, default=settings.WEIGHTING_T)
        parser.add_argument(
            "--max-rounds",
            type=int,
            default=None,
            help="Resampling round limit (default: "
            f"{settings.WEIGHTING_MAX_ROUNDS_PER_VERTEX} per vertex)",
        )
        parser.add_argument(
            "--n",
            type=int,
            default=None,
            help="Side of the pair grid for --mode knsq (graph must be K_{n^2})",
        )
        parser.add_argument(
            "--dump-assignment",
            default=None,
            metavar="PATH",
            help="Write the final pair assignment (pipeline mode)",
        )
        add_seed_argument(parser)
        add_solver_arguments(parser)
        add_output_argument(parser)

    def handle(self, *args, **options):
        g = read_graph(options["graph"])
        mode = options["mode"]
        solver = {
            "budget": options["dcs_budget"],
            "exact_threshold": options["exact_threshold"],
            "seed": options["seed"],
            "restarts": options["restarts"],
        }

        if mode == "euler":
            bipartition, exceptional = balanced_split(g)
            write_output(
                self, dump_bipartition(bipartition, exceptional), options["output"]
            )
            ok, diagnostics = verify_split(g, bipartition, exceptional)
            self._report(ok, diagnostics, "balanced split")
            return

        try:
            if mode == "pipeline":
                certificate = self._pipeline(g, options, solver)
            elif mode == "chromatic":
                certificate = self._chromatic(g, solver)
            else:
                certificate = self._knsq(g, options["n"], solver)
        except PipelineError as exc:
            if exc.certificate is not None:
                write_output(self, dump_certificate(exc.certificate), options["output"])
            raise CommandError(str(exc), returncode=FAILED_CHECK) from exc
        except WeightingError as exc:
            raise usage_error(exc) from exc

        write_output(self, dump_certificate(certificate), options["output"])
        if mode == "pipeline" and options["dump_assignment"]:
            write_output(
                self, dump_assignment(certificate.assignment), options["dump_assignment"]
            )
        ok, diagnostics = verify_certificate(g, certificate)
        if certificate.verdict.valid and not ok:
            logger.error(
                f"verdict {certificate.verdict} disagrees with the verifier"
            )
        if ok and not certificate.verdict.valid:
            diagnostics = (f"weights verify but the run failed: {certificate.verdict}",)
        self._report(
            ok and certificate.verdict.valid,
            diagnostics,
            f"certificate ({certificate.verdict})",
        )

    def _report(self, ok, diagnostics, what):
        if ok:
            self.stderr.write(self.style.SUCCESS(f"{what}: valid"))
            return
        for line in diagnostics:
            self.stderr.write(self.style.ERROR(line))
        raise CommandError(f"{what}: invalid", returncode=FAILED_CHECK)

    def _pipeline(self, g, options, solver):
        max_rounds = options["max_rounds"]
        if max_rounds is None:
            max_rounds = settings.WEIGHTING_MAX_ROUNDS_PER_VERTEX * max(g.n, 1)
        params = PipelineParams(
            q=rational(options["q"]),
            t=options["t"],
            seed=options["seed"],
            max_rounds=max_rounds,
            dcs_budget=solver["budget"],
            exact_threshold=solver["exact_threshold"],
            restarts=solver["restarts"],
        )
        return full_pipeline(g, params)

    def _chromatic(self, g, solver):
        weighting = chromatic_shortcut(g, **solver)
        bipartition = EdgeBipartition.build(
            dict.fromkeys(range(g.m), 1), dict.fromkeys(range(g.m), WHOLE_TAG)
        )
        return self._assemble(g, bipartition, [(weighting, tuple(range(g.m))), None])

    def _knsq(self, g, n, solver):
        if n is None:
            raise CommandError("--mode knsq needs --n", returncode=USAGE)
        grid, pa = knsq_assignment(n)
        if grid.edges != g.edges or grid.n != g.n:
            raise CommandError(
                f"--mode knsq --n {n} needs K_{n * n} in vertex order",
                returncode=USAGE
            )
        outcome = apply_rules(g, frozenset(range(g.m)), pa)
        weightings = []
        for side, colouring in ((1, pa.c1), (2, pa.c2)):
            sub, edge_ids = g.spanning_subgraph(outcome.bipartition.edges_on(side))
            found = None
            if 12 * n <= sub.min_degree():
                found = colour_weighting(sub, colouring, **solver)
            if found is None or not found.valid:
                found = search_nsd_weighting(
                    sub, seed=solver["seed"] + side, budget=solver["budget"]
                )
            self.stderr.write(f"side {side}: {found.method} weighting")
            weightings.append((found, edge_ids))
        return self._assemble(g, outcome.bipartition, weightings)

    def _assemble(self, g, bipartition, weightings):
        """Certificate from per-side weightings of spanning subgraphs."""
        weights = []
        verdict = Verdict.ok()
        for side, entry in enumerate(weightings, start=1):
            if entry is None:
                weights.append({})
                continue
            found, edge_ids = entry
            weights.append({eid: found.weights[j] for j, eid in enumerate(edge_ids)})
            conflicts = [edge_ids[j] for j in found.conflicts]
            if found.valid or not verdict.valid:
                continue
            if conflicts:
                reason = "equal weighted degrees"
            else:
                reason = found.dcs.status
            verdict = Verdict(
                valid=False,
                side=side,
                edge=conflicts[0] if conflicts else None,
                stage=found.method,
                reason=reason,
            )
        return build_certificate(g, bipartition, weights, verdict)
