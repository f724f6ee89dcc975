from dataclasses import dataclass, field
from types import MappingProxyType


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decomposition run. stage is None once every stage ran."""

    valid: bool
    side: int = None
    edge: int = None
    stage: str = None
    reason: str = ""

    @classmethod
    def ok(cls):
        return cls(valid=True)

    def __str__(self):
        if self.valid:
            return "valid"
        parts = ["invalid"]
        for key in ("side", "edge", "stage"):
            value = getattr(self, key)
            if value is not None:
                parts.append(f"{key}={value}")
        if self.reason:
            parts.append(f"reason={self.reason}")
        return " ".join(parts)


@dataclass(frozen=True)
class Certificate:
    """
    A decomposition G = G_1 + G_2 with a {1,2}-weighting of each side.
    - weights[i-1]: edge id -> weight for the edges of side i
    - sums[i-1][v]: weighted degree s_i(v)
    - hprime3[i-1]: edges of weight 2 on side i
    - assignment: the pair assignment of a pipeline run, if any
    """

    bipartition: object
    weights: tuple
    sums: tuple
    verdict: Verdict
    balance_ok: bool = None
    T: int = None
    report: object = field(default=None, compare=False, repr=False)
    assignment: object = field(default=None, compare=False, repr=False)
    timings: MappingProxyType = field(
        default=MappingProxyType({}), compare=False, repr=False
    )

    @property
    def hprime3(self):
        return tuple(
            frozenset(e for e, w in side.items() if w == 2) for side in self.weights
        )


def side_sums(g, bipartition, weights):
    """s_i(v) for both sides from the per-side weight maps."""
    sums = ([0] * g.n, [0] * g.n)
    for i in (1, 2):
        for eid in bipartition.edges_on(i):
            u, v = g.edges[eid]
            w = weights[i - 1][eid]
            sums[i - 1][u] += w
            sums[i - 1][v] += w
    return tuple(sums[0]), tuple(sums[1])


def build_certificate(g, bipartition, weights, verdict, **extra):
    weights = tuple(MappingProxyType(dict(sorted(w.items()))) for w in weights)
    return Certificate(
        bipartition=bipartition,
        weights=weights,
        sums=side_sums(g, bipartition, weights),
        verdict=verdict,
        **extra,
    )
