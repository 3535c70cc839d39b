"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of LogahoricError so the CLI can
convert it into a structured report entry (exit code 1).  Config parsing
problems raise ConfigError instead (exit code 2).
"""


class LogahoricError(Exception):
    """Base class for domain errors."""

    kind = "domain-error"


class UnsupportedTypeError(LogahoricError):
    kind = "unsupported-type"


class ShapeError(LogahoricError):
    kind = "shape"


class FiltrationError(LogahoricError):
    kind = "filtration"


class DivisorError(LogahoricError):
    kind = "divisor"


class TraceError(LogahoricError):
    kind = "trace"


class ConstraintError(LogahoricError):
    kind = "constraint"


class UnsupportedRealizationError(LogahoricError):
    kind = "unsupported-realization"


class InvalidReductionError(LogahoricError):
    kind = "invalid-reduction"


class NormalizationError(LogahoricError):
    kind = "normalization"


class AlgebraMismatchError(LogahoricError):
    kind = "algebra-mismatch"


class GroupError(LogahoricError):
    kind = "group"


class ConfigError(Exception):
    """Unparseable or structurally invalid configuration (CLI exit 2)."""
