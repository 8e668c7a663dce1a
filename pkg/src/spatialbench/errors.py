"""Exception types shared across the benchmark engine."""


class SpatialBenchError(Exception):
    """Base class for all benchmark-engine errors."""


class OutOfBounds(SpatialBenchError):
    """A movement left the configured board."""


class PathTooShort(SpatialBenchError):
    """A path metric needs at least two moves."""


class IllegalMove(SpatialBenchError):
    """A move violates the environment's mechanics."""


class GenerationBudgetExceeded(SpatialBenchError):
    """No conforming instance was found within the retry budget."""


class UnsupportedModality(SpatialBenchError):
    """The requested input modality is not defined for this task."""


class UnsupportedTask(SpatialBenchError):
    """The operation is not defined for this task family."""


class InvalidSolution(SpatialBenchError):
    """A stored solution failed to replay in its simulator."""


class ConfigError(SpatialBenchError):
    """Invalid run configuration."""
