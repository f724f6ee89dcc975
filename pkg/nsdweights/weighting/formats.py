"""
Text formats of the artifacts the commands read and write. Every format is
line oriented, blank lines are ignored, and every loader raises
FormatError naming the offending line.

    assignment      "n", then n lines "v c1 c2 y"
    weights         "m", then lines "eid w"
    edge set        "k", then k lines "eid"
    bipartition     "BIPARTITION m" + m lines "eid side tag",
                    "EXCEPTIONAL k" + k lines "v"
    dcs instance    an edge-list block, then n lines "v a lambda"
    certificate     BIPARTITION, WEIGHTS-1, WEIGHTS-2, SUMS-1, SUMS-2
                    sections, then "VERDICT <verdict>", "BALANCE ok|fail|-",
                    "T <T>|-"
"""

from types import MappingProxyType

from .certificates import Certificate, Verdict
from .dcs import ModTarget
from .decomposer import PairAssignment
from .exceptions import AssignmentError, FormatError, GraphError, GraphParseError
from .graphs import EdgeBipartition, load_edge_list, serialize_edge_list


class _Reader:
    """Cursor over the non-blank lines of a text, keeping line numbers."""

    def __init__(self, text):
        self.rows = [
            (number, line.split())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self.position = 0

    @property
    def line(self):
        if self.position < len(self.rows):
            return self.rows[self.position][0]
        return self.rows[-1][0] + 1 if self.rows else 1

    def done(self):
        return self.position >= len(self.rows)

    def next(self, what):
        if self.done():
            raise FormatError(self.line, f"unexpected end of file, expected {what}")
        number, tokens = self.rows[self.position]
        self.position += 1
        return number, tokens

    def ints(self, count, what):
        number, tokens = self.next(what)
        if len(tokens) != count:
            raise FormatError(number, f"expected {what}")
        try:
            return number, [int(x) for x in tokens]
        except ValueError:
            raise FormatError(number, f"expected {what}") from None

    def section(self, name):
        number, tokens = self.next(f"section {name}")
        if len(tokens) != 2 or tokens[0] != name:
            raise FormatError(number, f"expected '{name} <count>'")
        try:
            count = int(tokens[1])
        except ValueError:
            raise FormatError(number, f"bad count in section {name}") from None
        if count < 0:
            raise FormatError(number, f"negative count in section {name}")
        return count

    def finish(self):
        if not self.done():
            raise FormatError(self.line, "trailing content")


def _count(reader, what):
    _, (count,) = reader.ints(1, what)
    if count < 0:
        raise FormatError(reader.rows[reader.position - 1][0], f"negative {what}")
    return count


# Pair assignment


def dump_assignment(pa):
    lines = [str(pa.n)]
    lines.extend(
        f"{v} {a} {b} {y}" for v, (a, b, y) in enumerate(zip(pa.c1, pa.c2, pa.y))
    )
    return "\n".join(lines) + "\n"


def load_assignment(text):
    reader = _Reader(text)
    n = _count(reader, "vertex count")
    c1, c2, y = [], [], []
    for v in range(n):
        number, (u, a, b, size) = reader.ints(4, "'v c1 c2 y'")
        if u != v:
            raise FormatError(number, f"expected vertex {v}, got {u}")
        c1.append(a)
        c2.append(b)
        y.append(size)
    reader.finish()
    try:
        return PairAssignment(c1=tuple(c1), c2=tuple(c2), y=tuple(y))
    except AssignmentError as exc:
        raise FormatError(reader.line, str(exc)) from exc


# Weights and edge sets


def dump_weights(weights):
    lines = [str(len(weights))]
    lines.extend(f"{eid} {w}" for eid, w in sorted(weights.items()))
    return "\n".join(lines) + "\n"


def _read_weights(reader, count):
    weights = {}
    for _ in range(count):
        number, (eid, w) = reader.ints(2, "'eid w'")
        if eid in weights:
            raise FormatError(number, f"edge {eid} weighted twice")
        if w < 1:
            raise FormatError(number, f"weight {w} is not positive")
        weights[eid] = w
    return weights


def load_weights(text):
    reader = _Reader(text)
    weights = _read_weights(reader, _count(reader, "weight count"))
    reader.finish()
    return weights


def dump_edge_set(edges):
    lines = [str(len(edges))]
    lines.extend(str(eid) for eid in sorted(edges))
    return "\n".join(lines) + "\n"


def load_edge_set(text):
    reader = _Reader(text)
    edges = set()
    for _ in range(_count(reader, "edge count")):
        number, (eid,) = reader.ints(1, "'eid'")
        if eid in edges:
            raise FormatError(number, f"edge {eid} listed twice")
        edges.add(eid)
    reader.finish()
    return frozenset(edges)


# Bipartitions


def _dump_bipartition_section(bipartition):
    lines = [f"BIPARTITION {len(bipartition.side)}"]
    lines.extend(
        f"{eid} {side} {bipartition.provenance.get(eid, '-')}"
        for eid, side in bipartition.side.items()
    )
    return lines


def _read_bipartition_section(reader):
    side, provenance = {}, {}
    for _ in range(reader.section("BIPARTITION")):
        number, tokens = reader.next("'eid side tag'")
        if len(tokens) != 3:
            raise FormatError(number, "expected 'eid side tag'")
        try:
            eid, s = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FormatError(number, "expected 'eid side tag'") from None
        if eid in side:
            raise FormatError(number, f"edge {eid} placed twice")
        side[eid] = s
        if tokens[2] != "-":
            provenance[eid] = tokens[2]
    try:
        return EdgeBipartition.build(side, provenance)
    except GraphError as exc:
        raise FormatError(reader.line, str(exc)) from exc


def dump_bipartition(bipartition, exceptional=()):
    lines = _dump_bipartition_section(bipartition)
    lines.append(f"EXCEPTIONAL {len(exceptional)}")
    lines.extend(str(v) for v in sorted(exceptional))
    return "\n".join(lines) + "\n"


def load_bipartition(text):
    """Returns (EdgeBipartition, exceptional vertices)."""
    reader = _Reader(text)
    bipartition = _read_bipartition_section(reader)
    exceptional = set()
    for _ in range(reader.section("EXCEPTIONAL")):
        _, (v,) = reader.ints(1, "'v'")
        exceptional.add(v)
    reader.finish()
    return bipartition, frozenset(exceptional)


# DCS instances


def dump_dcs_instance(g, targets):
    lines = [serialize_edge_list(g).rstrip("\n")]
    lines.extend(f"{v} {a} {lam}" for v, (a, lam) in enumerate(zip(targets.a, targets.lam)))
    return "\n".join(lines) + "\n"


def load_dcs_instance(text):
    """Returns (Graph, ModTarget)."""
    raw = text.splitlines()
    reader = _Reader(text)
    if reader.done():
        raise FormatError(1, "missing header 'n m'")
    header_line, header = reader.rows[0]
    if len(header) != 2 or not header[1].lstrip("-").isdigit():
        raise FormatError(header_line, "expected header 'n m'")
    m = int(header[1])
    if m < 0 or len(reader.rows) < m + 1:
        raise FormatError(reader.line, "edge-list block is incomplete")
    last = reader.rows[m][0]
    try:
        g = load_edge_list("\n".join(raw[:last]))
    except GraphParseError as exc:
        raise FormatError(exc.line, exc.message) from exc
    reader.position = m + 1
    a, lam = [], []
    for v in range(g.n):
        number, (u, x, modulus) = reader.ints(3, "'v a lambda'")
        if u != v:
            raise FormatError(number, f"expected vertex {v}, got {u}")
        if modulus < 2:
            raise FormatError(number, f"lambda must be >= 2, got {modulus}")
        a.append(x)
        lam.append(modulus)
    reader.finish()
    return g, ModTarget(a=tuple(a), lam=tuple(lam))


# Certificates


def dump_certificate(cert):
    lines = _dump_bipartition_section(cert.bipartition)
    for i, weights in enumerate(cert.weights, start=1):
        lines.append(f"WEIGHTS-{i} {len(weights)}")
        lines.extend(f"{eid} {w}" for eid, w in sorted(weights.items()))
    for i, sums in enumerate(cert.sums, start=1):
        lines.append(f"SUMS-{i} {len(sums)}")
        lines.extend(f"{v} {s}" for v, s in enumerate(sums))
    lines.append(f"VERDICT {cert.verdict}")
    balance = {True: "ok", False: "fail", None: "-"}[cert.balance_ok]
    lines.append(f"BALANCE {balance}")
    lines.append(f"T {'-' if cert.T is None else cert.T}")
    return "\n".join(lines) + "\n"


def _parse_verdict(number, tokens):
    if tokens == ["valid"]:
        return Verdict.ok()
    if not tokens or tokens[0] != "invalid":
        raise FormatError(number, "verdict must be 'valid' or 'invalid ...'")
    fields = {}
    rest = tokens[1:]
    for i, token in enumerate(rest):
        key, sep, value = token.partition("=")
        if not sep:
            raise FormatError(number, f"bad verdict field {token!r}")
        if key == "reason":
            fields["reason"] = " ".join([value, *rest[i + 1 :]])
            break
        if key not in ("side", "edge", "stage"):
            raise FormatError(number, f"unknown verdict field {key!r}")
        fields[key] = value
    try:
        for key in ("side", "edge"):
            if key in fields:
                fields[key] = int(fields[key])
    except ValueError:
        raise FormatError(number, "side and edge must be integers") from None
    return Verdict(valid=False, **fields)


def load_certificate(text):
    reader = _Reader(text)
    bipartition = _read_bipartition_section(reader)
    weights = []
    for i in (1, 2):
        weights.append(
            MappingProxyType(_read_weights(reader, reader.section(f"WEIGHTS-{i}")))
        )
    sums = []
    for i in (1, 2):
        values = []
        for v in range(reader.section(f"SUMS-{i}")):
            number, (u, s) = reader.ints(2, "'v s'")
            if u != v:
                raise FormatError(number, f"expected vertex {v}, got {u}")
            values.append(s)
        sums.append(tuple(values))

    number, tokens = reader.next("VERDICT")
    if not tokens or tokens[0] != "VERDICT":
        raise FormatError(number, "expected VERDICT line")
    verdict = _parse_verdict(number, tokens[1:])

    number, tokens = reader.next("BALANCE")
    if tokens[:1] != ["BALANCE"] or len(tokens) != 2 or tokens[1] not in ("ok", "fail", "-"):
        raise FormatError(number, "expected 'BALANCE ok|fail|-'")
    balance_ok = {"ok": True, "fail": False, "-": None}[tokens[1]]

    number, tokens = reader.next("T")
    if tokens[:1] != ["T"] or len(tokens) != 2:
        raise FormatError(number, "expected 'T <value>|-'")
    try:
        T = None if tokens[1] == "-" else int(tokens[1])
    except ValueError:
        raise FormatError(number, "T must be an integer") from None
    reader.finish()

    return Certificate(
        bipartition=bipartition,
        weights=tuple(weights),
        sums=tuple(sums),
        verdict=verdict,
        balance_ok=balance_ok,
        T=T,
    )
