"""Exception hierarchy.

Domain rejections (a point is not Pareto optimal, a certificate fails a
check) are ``DomainError`` subclasses; the command line maps those to exit
status 1. Malformed input is ``InputError`` (exit status 2).
"""

from __future__ import annotations


class ParetoCertError(Exception):
    """Base class for everything raised on purpose by this package."""


class InputError(ParetoCertError, ValueError):
    """Malformed or inconsistent input data."""


class DimensionMismatch(InputError):
    pass


class DomainError(ParetoCertError):
    """A well-formed question whose answer is a rejection."""

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class NotInSetError(DomainError):
    def __init__(self, point, message="point not in set"):
        super().__init__(message)
        self.point = point


class PreconditionError(DomainError):
    """The question is well formed but outside the operation's stated domain."""


class EmptyPolyhedronError(DomainError):
    pass


class ResourceLimitError(DomainError):
    pass


class NotMaximalError(DomainError):
    def __init__(self, point, dominator):
        super().__init__("point is not Pareto optimal")
        self.point = point
        self.dominator = dominator

    def to_json(self) -> dict:
        from .linalg import fmt

        d = super().to_json()
        d["dominator"] = [fmt(x) for x in self.dominator]
        return d


class NoMaximalPointsError(DomainError):
    pass


class CertificateRejected(DomainError):
    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason

    def to_json(self) -> dict:
        d = super().to_json()
        d.update(step=self.step, reason=self.reason)
        return d


class ChainError(DomainError):
    pass


class NonMonotoneError(DomainError):
    def __init__(self, agent: int):
        super().__init__(f"agent {agent + 1} fails the strict monotonicity check")
        self.agent = agent

    def to_json(self) -> dict:
        d = super().to_json()
        d["agent"] = self.agent
        return d


class EndowmentNotParetoError(DomainError):
    def __init__(self, utilities, dominator):
        super().__init__("endowment not Pareto optimal")
        self.utilities = utilities
        self.dominator = dominator

    def to_json(self) -> dict:
        from .linalg import fmt

        d = super().to_json()
        d["dominator"] = [fmt(x) for x in self.dominator]
        return d


class NotMinimalError(DomainError):
    def __init__(self, witness):
        super().__init__(
            "aggregate endowment is not minimal in the upper contour set; "
            "preferences are not monotone under limited resources"
        )
        self.witness = witness

    def to_json(self) -> dict:
        from .linalg import fmt

        d = super().to_json()
        d["witness"] = [fmt(x) for x in self.witness]
        return d


class NoPositivePriceError(DomainError):
    pass


class WalrasFailure(DomainError):
    pass
