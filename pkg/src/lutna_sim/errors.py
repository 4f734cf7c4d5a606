"""
Exception hierarchy for the LUT-NA simulator.

Every error carries a short ``kind`` slug so the command layer can print a
single machine-parsable line (``error: <kind>: <message>``).
"""


class LutnaError(ValueError):
    """Base class for all simulator errors."""

    kind = "error"


class NonFiniteInputError(LutnaError):
    kind = "non-finite-input"


class WidthOverflowError(LutnaError):
    kind = "width-overflow"


class LengthMismatchError(LutnaError):
    kind = "length-mismatch"


class ShapeMismatchError(LutnaError):
    kind = "shape-mismatch"


class UnassignedSchemeError(LutnaError):
    kind = "unassigned-scheme"


class ConfigError(LutnaError):
    kind = "config"


class EmptyDatasetError(LutnaError):
    kind = "empty-dataset"


class TrainingDivergedError(LutnaError):
    kind = "training-diverged"


class PruneError(LutnaError):
    kind = "prune"


class PlanMismatchError(LutnaError):
    kind = "plan-mismatch"


class NoFeasiblePlanError(LutnaError):
    kind = "no-feasible-plan"


class ModelFormatError(LutnaError):
    kind = "model-format"


class ModelVersionError(ModelFormatError):
    kind = "model-version"


class ModelChecksumError(ModelFormatError):
    kind = "model-checksum"


class TruncatedBlobError(ModelFormatError):
    kind = "model-truncated"


class DatasetFormatError(LutnaError):
    kind = "dataset-format"
