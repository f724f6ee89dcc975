from django.core.management.base import BaseCommand, CommandError

from weighting.exceptions import CertificateStructureError, MissingWeightError
from weighting.formats import load_bipartition, load_certificate, load_weights
from weighting.oracle import verify_certificate, verify_nsd, verify_split

from ._common import FAILED_CHECK, read_artifact, read_graph, usage_error


class Command(BaseCommand):
    help = "Check a weighting, a certificate or a balanced split against its graph"

    def add_arguments(self, parser):
        checks = parser.add_subparsers(dest="check", required=True)

        nsd = checks.add_parser("nsd", help="Neighbour sum distinguishing weighting")
        nsd.add_argument("graph")
        nsd.add_argument("weights")

        cert = checks.add_parser("cert", help="Two-sided decomposition certificate")
        cert.add_argument("graph")
        cert.add_argument("certificate")

        split = checks.add_parser("split", help="Balanced split with exceptional vertices")
        split.add_argument("graph")
        split.add_argument("bipartition")

    def handle(self, *args, **options):
        check = options["check"]
        g = read_graph(options["graph"])
        try:
            if check == "nsd":
                weights = read_artifact(options["weights"], load_weights)
                ok, conflicts = verify_nsd(g, weights)
                diagnostics = [
                    f"edge {eid} {g.edges[eid]} joins equal sums" for eid in conflicts
                ]
            elif check == "cert":
                cert = read_artifact(options["certificate"], load_certificate)
                ok, diagnostics = verify_certificate(g, cert)
            else:
                bipartition, exceptional = read_artifact(
                    options["bipartition"], load_bipartition
                )
                ok, diagnostics = verify_split(g, bipartition, exceptional)
        except (MissingWeightError, CertificateStructureError) as exc:
            raise usage_error(exc) from exc

        if ok:
            self.stdout.write(self.style.SUCCESS("valid"))
            return
        for line in diagnostics:
            self.stderr.write(self.style.ERROR(line))
        raise CommandError(
            f"{check} check failed with {len(diagnostics)} problem(s)",
            returncode=FAILED_CHECK,
        )
