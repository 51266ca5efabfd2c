"""Exception types shared across the package.

The CLI maps these onto distinct exit codes: validation failures (bad
inputs, malformed scenario files), computation failures (impossible
requests such as delay at zero capacity, or a broken schedule), and
plain I/O errors.
"""


class ValidationError(ValueError):
    """Input violates a type invariant or schema."""


class ScenarioError(ValidationError):
    """Scenario file is malformed (unknown keys, wrong types, bad values)."""


class ComputationError(RuntimeError):
    """A computation cannot produce a meaningful result."""


class ZeroCapacityError(ComputationError):
    """Per-vehicle capacity is zero, so delay is unbounded."""
