"""Exception types raised across the package."""


class ChannelDomainError(ValueError):
    """A channel or controller parameter lies outside its physical domain."""


class SingularFitError(ValueError):
    """The least-squares design matrix does not have full column rank."""

    def __init__(self, message: str, column: str | None = None):
        super().__init__(message)
        self.column = column


class NonPhysicalPredictionError(ValueError):
    """The fitted model predicts a transaction size that is not positive."""

    def __init__(self, raw_value: float):
        super().__init__(
            f"predicted transaction size {raw_value!r} bits is not positive; "
            "target unreachable under this model"
        )
        self.raw_value = raw_value


class NonTerminationError(RuntimeError):
    """The adaptation loop hit its step cap without finishing."""


class ModelFileError(ValueError):
    """A model document is unreadable or violates the model schema."""
