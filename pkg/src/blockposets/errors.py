"""Shared exception types."""


class SizeLimitExceeded(Exception):
    """An enumeration grew past its configured bound."""


class TheoryViolation(Exception):
    """A structural fact that should hold mathematically failed on concrete data.

    Carries a witness so the failing configuration can be reported instead of
    silently producing wrong answers.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
