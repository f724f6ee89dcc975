import itertools
from concurrent.futures import ProcessPoolExecutor

from django.conf import settings
from django.core.management.base import BaseCommand

from weighting.exceptions import PipelineError, WeightingError
from weighting.graphs import generate_regular
from weighting.oracle import verify_certificate
from weighting.utils import spawn_seeds
from weighting.weighter import PipelineParams, full_pipeline

from ._common import add_seed_argument, add_solver_arguments, rational, usage_error

STAGES = ("split", "hprime", "compute_y", "resample", "rules", "targets", "weighting", "verify")
COLUMNS = ("instance", "n", "d", "q", "t", "seed") + STAGES + ("rounds", "verdict")
WIDTHS = (8, 6, 5, 7, 3, 20) + (9,) * len(STAGES) + (7, 0)


def format_row(values):
    cells = [
        str(value).rjust(width) if width else str(value)
        for value, width in zip(values, WIDTHS)
    ]
    return " ".join(cells)


def run_instance(job):
    """One bench row. Module level so worker processes can import it."""
    instance, n, d, q, t, seed, solver = job
    row = [instance, n, d, q, t, seed]
    try:
        g = generate_regular(n, d, seed, max_attempts=solver["max_attempts"])
        params = PipelineParams(
            q=q,
            t=t,
            seed=seed,
            max_rounds=solver["rounds_per_vertex"] * n,
            dcs_budget=solver["budget"],
            exact_threshold=solver["exact_threshold"],
            restarts=solver["restarts"],
        )
        cert = full_pipeline(g, params)
    except PipelineError as exc:
        return row + ["-"] * len(STAGES) + ["-", f"failed:{exc.stage}"]
    except WeightingError as exc:
        return row + ["-"] * len(STAGES) + ["-", f"error:{type(exc).__name__}"]

    timings = [f"{cert.timings.get(stage, 0.0):.3f}" for stage in STAGES]
    if cert.verdict.valid:
        ok, _ = verify_certificate(g, cert)
        verdict = "valid" if ok else "false-valid"
    else:
        verdict = f"invalid:{cert.verdict.stage}"
    return row + timings + [cert.report.iterations, verdict]


class Command(BaseCommand):
    help = "Run the decomposition pipeline over a sweep of random regular graphs"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, nargs="+", default=[200])
        parser.add_argument("--d", type=int, nargs="+", default=[96, 192])
        parser.add_argument("--q", nargs="+", default=[settings.WEIGHTING_Q])
        parser.add_argument("--t", type=int, nargs="+", default=[2])
        parser.add_argument(
            "--repeats", type=int, default=1, help="Seeds per parameter combination"
        )
        parser.add_argument(
            "--jobs", type=int, default=1, help="Worker processes (1 runs inline)"
        )
        add_seed_argument(parser)
        add_solver_arguments(parser)

    def handle(self, *args, **options):
        qs = [rational(q) for q in options["q"]]
        combos = [
            (n, d, q, t)
            for n, d, q, t in itertools.product(options["n"], options["d"], qs, options["t"])
            for _ in range(options["repeats"])
        ]
        if not combos:
            raise usage_error("empty parameter sweep")
        seeds = spawn_seeds(options["seed"], len(combos))
        solver = {
            "budget": options["dcs_budget"],
            "exact_threshold": options["exact_threshold"],
            "restarts": options["restarts"],
            "rounds_per_vertex": settings.WEIGHTING_MAX_ROUNDS_PER_VERTEX,
            "max_attempts": settings.WEIGHTING_REGULAR_MAX_ATTEMPTS,
        }
        jobs = [
            (instance, n, d, q, t, seed, solver)
            for instance, ((n, d, q, t), seed) in enumerate(zip(combos, seeds))
        ]

        if options["jobs"] > 1:
            with ProcessPoolExecutor(max_workers=options["jobs"]) as pool:
                rows = list(pool.map(run_instance, jobs))
        else:
            rows = [run_instance(job) for job in jobs]

        self.stdout.write(format_row(COLUMNS))
        for row in sorted(rows, key=lambda r: r[0]):
            self.stdout.write(format_row(row))

        valid = sum(1 for row in rows if row[-1] == "valid")
        style = self.style.SUCCESS if valid == len(rows) else self.style.WARNING
        self.stderr.write(style(f"{valid}/{len(rows)} valid certificates"))
