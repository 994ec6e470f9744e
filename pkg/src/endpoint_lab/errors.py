from __future__ import annotations


class LabError(Exception):
    """Base class for endpoint lab errors."""

    def __init__(self, message: str, exc: Exception | None = None):
        super().__init__()
        self.exc = exc
        self.message = message
        self.details = str(exc) if exc else None

    def __str__(self):
        return f"{self.message} ({self.details})" if self.details else self.message


class RationalError(LabError):
    """Error to indicate that a rational could not be constructed or parsed."""


class DomainError(LabError):
    """Error to indicate that an argument lies outside the admissible domain."""


class EmptyIntervalError(LabError):
    """Error to indicate that an interval contains no points."""

    def __init__(self, lo: object, hi: object) -> None:
        super().__init__("Interval is empty")
        self.details = f"lo: {lo}, hi: {hi}"


class FunctionSyntaxError(LabError):
    """Error to indicate that a function description is malformed."""


class FunctionDomainError(LabError):
    """Error to indicate that a function description is not a bounded corpus model."""


class OracleDefectError(LabError):
    """Error to indicate that an oracle search ran out of budget.

    The searches are guaranteed to terminate for corpus models, so this
    signals a defect in a model oracle rather than a runtime condition.
    """

    def __init__(self, query: str, budget: int) -> None:
        super().__init__("Search budget exhausted")
        self.details = f"Query: '{query}', budget: {budget}"
        self.query = query
        self.budget = budget


class RuleViolationError(LabError):
    """Error to indicate that a sample rule selected a point outside its subinterval."""

    def __init__(self, point: object, lo: object, hi: object) -> None:
        super().__init__("Sample point outside subinterval")
        self.details = f"{point} not in [{lo}, {hi}]"
        self.point = point


class PartitionError(LabError):
    """Error to indicate that a partition is invalid or partitions the wrong interval."""


class CertificateCorruptionError(LabError):
    """Error to indicate that a stored certificate field disagrees with its recomputation."""

    def __init__(self, field: str, stored: object, recomputed: object) -> None:
        super().__init__(f"Certificate field '{field}' is corrupt")
        self.details = f"stored: {stored}, recomputed: {recomputed}"
        self.field = field


class NameKeyError(LabError):
    """Error to indicate that name and key are not defined."""

    def __init__(self) -> None:
        super().__init__("Name and key not defined")


class ConfigError(LabError):
    """Error to indicate an invalid run configuration."""
