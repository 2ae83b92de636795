"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import click

# exit status 1: the input was not acceptable
# exit status 2: the input was fine but the numerics gave up


class ParameterError(click.ClickException):
    exit_code = 1

    def __init__(self, msg):
        super().__init__(msg)


class SingularInputError(ParameterError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"Singular input: {name} must not be zero")


class InvalidBracketError(ParameterError):
    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        super().__init__(f"Invalid bracket [{lo!r}, {hi!r}]: lower end must be below upper end")


class TrajectoryTooShortError(ParameterError):
    def __init__(self, samples, required):
        self.samples = samples
        self.required = required
        super().__init__(f"Trajectory window has {samples} samples, at least {required} are required")


class NonUniformSamplingError(ParameterError):
    def __init__(self, deviation):
        self.deviation = deviation
        super().__init__(f"Trajectory is not uniformly sampled (relative spacing deviation {deviation:.3g})")


class HilbertSpaceError(ParameterError):
    def __init__(self, msg):
        super().__init__(f"Invalid Hilbert space: {msg}")


class NumericalFailure(click.ClickException):
    exit_code = 2

    def __init__(self, msg):
        super().__init__(msg)


class StiffnessError(NumericalFailure):
    def __init__(self, time):
        self.time = time
        super().__init__(f"Step size underflow at t = {time:.9g} s, the problem looks stiff")


class DivergenceError(NumericalFailure):
    def __init__(self, time):
        self.time = time
        super().__init__(f"Non-finite state at t = {time:.9g} s")


class EigensolverError(NumericalFailure):
    def __init__(self, matrix, reason):
        self.matrix = matrix
        super().__init__(f"Eigenvalue computation failed: {reason}")


class TruncationOverflowError(NumericalFailure):
    def __init__(self, time, population):
        self.time = time
        self.population = population
        super().__init__(
            f"Top Fock level population {population:.3g} exceeds the truncation limit at t = {time:.9g} s, "
            "increase n_max"
        )


class InvariantViolationError(NumericalFailure):
    def __init__(self, quantity, value, limit, time=None):
        self.quantity = quantity
        self.value = value
        self.limit = limit
        self.time = time
        where = "" if time is None else f" at t = {time:.9g} s"
        super().__init__(f"{quantity} is {value:.3g}{where}, the limit is {limit:.3g}")


class PhaseMapError(click.ClickException):
    exit_code = 1

    def __init__(self, msg):
        super().__init__(msg)


class CorruptPhaseMapError(PhaseMapError):
    def __init__(self, path, offset, reason):
        self.path = path
        self.offset = offset
        super().__init__(f"Corrupt phase map {path} at byte offset {offset}: {reason}")


class SchemaVersionError(PhaseMapError):
    def __init__(self, path, found, supported):
        self.found = found
        super().__init__(f"Unsupported schema version {found} in {path} (supported: {supported})")


class GridMismatchError(PhaseMapError):
    def __init__(self, found, expected):
        self.found = found
        self.expected = expected
        super().__init__(f"Grid hash mismatch: file has {found}, requested grid is {expected}")


class IncompletePhaseMapError(PhaseMapError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"Phase map is incomplete, {missing} cells have no result (resume the sweep first)")
