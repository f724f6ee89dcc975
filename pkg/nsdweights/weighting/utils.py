import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from .exceptions import ParameterError


def parse_rational(value):
    """Read q from "9/20", "0.45", a Fraction or a number, exactly."""
    if isinstance(value, Fraction):
        return value
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParameterError(f"not a rational number: {value!r}") from exc


def check_q(q):
    q = parse_rational(q)
    if not 0 < q < Fraction(1, 2):
        raise ParameterError(f"q must lie in (0, 1/2), got {q}")
    return q


def check_positive(name, value):
    if int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value}")
    return int(value)


def make_rng(seed):
    """The one RNG of the project: numpy's PCG64 seeded explicitly."""
    return np.random.default_rng(seed)


def spawn_seeds(seed, count):
    """Derive `count` independent child seeds from a master seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def is_power_of_two(value):
    return value >= 1 and value & (value - 1) == 0


@contextmanager
def stage_timer(timings, stage):
    """Record wall time of a block into timings[stage] (seconds)."""
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[stage] = time.perf_counter() - start
