class WeightingError(Exception):
    """Base class for every error raised by the weighting app."""


class ParameterError(WeightingError, ValueError):
    """A numeric parameter (q, t, n, k, a budget) is out of range."""


class GraphError(WeightingError):
    pass


class GraphParseError(GraphError):
    """Edge-list text could not be read. Always names the offending line."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class MalformedLineError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class EdgeCountError(GraphParseError):
    pass


class GenerationError(GraphError):
    """A generator was asked for an impossible graph or ran out of rounds."""


class UnknownEdgeError(GraphError, KeyError):
    def __init__(self, edge_id, m):
        self.edge_id = edge_id
        super().__init__(f"edge id {edge_id} not in 0..{m - 1}")

    def __str__(self):
        return self.args[0]


class DegreeTooSmallError(WeightingError):
    """q*d(v)/(24t) < 1, so y_v would not be a positive power of two."""

    def __init__(self, vertex, value):
        self.vertex = vertex
        self.value = value
        super().__init__(
            f"vertex {vertex}: q*d(v)/(24t) = {value} < 1, degree too small"
        )


class AssignmentError(WeightingError):
    """A pair assignment or a greedy target choice is infeasible."""


class MissingWeightError(WeightingError, KeyError):
    def __init__(self, edge_id):
        self.edge_id = edge_id
        super().__init__(f"edge {edge_id} has no weight")

    def __str__(self):
        return self.args[0]


class CertificateStructureError(WeightingError):
    pass


class InstanceTooLargeError(WeightingError):
    pass


class FormatError(WeightingError):
    """An artifact file (assignment, certificate, instance) is malformed."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class PipelineError(WeightingError):
    """A pipeline stage could not start; carries the partial certificate."""

    def __init__(self, stage, cause, certificate=None):
        self.stage = stage
        self.cause = cause
        self.certificate = certificate
        super().__init__(f"stage {stage!r} failed: {cause}")


class PreconditionError(WeightingError):
    """A construction was asked for outside the regime it is defined on."""
