"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class UndefinedMetricError(ValueError):
    """A metric is undefined for the given input (e.g. an empty summary)."""


class DecodeFailureError(RuntimeError):
    """Sampling cannot proceed because the distribution is degenerate."""


class ProviderError(RuntimeError):
    """A next-token provider failed while serving a decoding step."""

    def __init__(self, message, step=None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


class DatasetError(ValueError):
    """A dataset or summary file could not be parsed or validated."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
