"""Exception types shared across the package."""

from __future__ import annotations


class ComodkitError(Exception):
    """Base class for all library errors."""


class ValidationError(ComodkitError):
    """An axiom failed. ``axiom`` names it, ``witness`` locates it."""

    def __init__(self, axiom: str, witness: dict | None = None, message: str = ""):
        self.axiom = axiom
        self.witness = dict(witness or {})
        text = message or f"axiom '{axiom}' violated"
        if self.witness:
            text += f" (witness {self.witness})"
        super().__init__(text)


class NoSolution(ComodkitError):
    """Inconsistent linear system."""


class NonSplitSimple(ComodkitError):
    """A simple quotient whose endomorphism algebra is larger than the field."""


class SmallCharacteristic(ComodkitError):
    """The trace-form radical could not be certified in this characteristic."""


class NotRational(ComodkitError):
    """A module whose reconstructed coaction is not coassociative."""


class Inconclusive(ComodkitError):
    """A search budget ran out before a certificate was found."""


class RouteDisagreement(ComodkitError):
    """Two independent decision procedures returned different answers."""

    def __init__(self, flag: str, route_a, route_b):
        self.flag = flag
        self.route_a = route_a
        self.route_b = route_b
        super().__init__(f"routes disagree on {flag}: {route_a!r} vs {route_b!r}")


class NotProjective(ComodkitError):
    pass


class NonStabilized(ComodkitError):
    pass


class IsoNotFound(ComodkitError):
    pass


class NotOneDimensional(ComodkitError):
    pass


class NotConvolutionInvertible(ComodkitError):
    pass


class NoPreantipode(ComodkitError):
    pass


class InvalidSpec(ComodkitError):
    pass


class InputError(ComodkitError):
    """Malformed presentation file; ``position`` is a JSON path when known."""

    def __init__(self, message: str, position: str = ""):
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)
