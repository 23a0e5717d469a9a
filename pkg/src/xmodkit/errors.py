"""Exception hierarchy.

Every error carries a ``witness`` tuple naming the first violating data in
lexicographic order, so failures are reproducible across runs.
"""

from __future__ import annotations


class XmodError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", witness: tuple = ()):
        self.witness = tuple(witness)
        if not message:
            message = type(self).__name__
        if self.witness:
            message = f"{message} (witness={self.witness})"
        super().__init__(message)


class InvalidGroup(XmodError):
    pass


class NotSquare(InvalidGroup):
    pass


class NoIdentityAtZero(InvalidGroup):
    pass


class MissingInverse(InvalidGroup):
    pass


class NotAssociative(InvalidGroup):
    pass


class NotHomomorphism(XmodError):
    pass


class ImageNotCentral(XmodError):
    pass


class ActorMismatch(XmodError):
    pass


class InvalidAutoAction(XmodError):
    pass


class NotAnAction(XmodError):
    pass


class InvalidGroupoid(XmodError):
    pass


class InvalidFunctor(XmodError):
    pass


class Invalid2Groupoid(XmodError):
    pass


class Axiom1Fails(XmodError):
    pass


class Axiom2Fails(XmodError):
    pass


class NotCrossedModuleHom(XmodError):
    pass


class InvalidComplex(XmodError):
    pass


class ActionAxiomFails(XmodError):
    """A strict-action axiom (functor, naturality, cocycle, equivariance, unit) fails."""

    def __init__(self, axiom: str, witness: tuple = ()):
        self.axiom = axiom
        super().__init__(f"action axiom '{axiom}' fails", witness)


class CompositionNotDescending(XmodError):
    pass


class NotAbelianSituation(XmodError):
    pass


class RepresentativeDependence(XmodError):
    pass


class InvalidXCM(XmodError):
    pass


class SizeLimitExceeded(XmodError):
    pass


class VerificationFailed(XmodError):
    pass


class Pi1NotAbelian(XmodError):
    pass


class CentralityFails(XmodError):
    pass


class FunctorialityFails(XmodError):
    pass


class NaturalityFails(XmodError):
    pass


class IsoSearchFailed(XmodError):
    pass


class CommutationFails(XmodError):
    pass


class Mismatch(XmodError):
    pass


class ComparisonFails(XmodError):
    pass


class DeltaNotInStab(XmodError):
    pass


class XcmMismatch(XmodError):
    pass


class RoundTripFails(XmodError):
    pass


class FunctorLawFails(XmodError):
    pass


class PeifferFails(XmodError):
    pass


class InputError(XmodError):
    """Malformed or inconsistent instance file; carries the offending line number."""

    def __init__(self, message: str = "", witness: tuple = (), line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, witness)


class InstanceSyntaxError(InputError):
    pass


class UnresolvedName(InputError):
    pass


class ValidationError(InputError):
    pass


class UnknownSuite(XmodError):
    pass
