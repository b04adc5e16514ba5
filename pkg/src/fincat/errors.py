"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`FinCatError`.
Errors caused by malformed input additionally derive from
:class:`ValidationError` (itself a :class:`ValueError`), so callers that only
care about "bad data" can catch that one class.
"""


class FinCatError(Exception):
    """Base class for all library errors."""


class ValidationError(FinCatError, ValueError):
    """Input tables or maps violate a structural law."""


# -- categories ---------------------------------------------------------------


class DuplicateIdentifier(ValidationError):
    pass


class DanglingReference(ValidationError):
    pass


class MissingComposite(ValidationError):
    pass


class IllTypedComposite(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class CyclicGraph(ValidationError):
    pass


class UnknownObject(FinCatError, KeyError):
    pass


class UnknownMorphism(FinCatError, KeyError):
    pass


class NotComposable(FinCatError, ValueError):
    pass


# -- functors and transformations --------------------------------------------


class NotFunctorial(ValidationError):
    def __init__(self, law, witness, message=None):
        self.law = law
        self.witness = witness
        super().__init__(message or f"{law} fails at {witness!r}")


class SourceTargetMismatch(ValidationError):
    pass


class TypingMismatch(ValidationError):
    pass


class BadComponentTyping(ValidationError):
    pass


class NotNatural(ValidationError):
    def __init__(self, morphism, message=None):
        self.morphism = morphism
        super().__init__(message or f"naturality square fails at {morphism!r}")


class TargetMismatch(ValidationError):
    pass


class BaseMismatch(ValidationError):
    pass


class EndpointMismatch(ValidationError):
    pass


# -- fibrations ---------------------------------------------------------------


class NotOpfibration(FinCatError, ValueError):
    pass


class NotOpfibrationAt(NotOpfibration):
    pass


class NotALift(ValidationError):
    pass


class NotPseudo(FinCatError, ValueError):
    pass


class WrongBase(FinCatError, ValueError):
    pass


class BackwardNotInitial(FinCatError, ValueError):
    pass


class NotOverX(FinCatError, ValueError):
    pass


class InternalInvariantViolation(FinCatError, AssertionError):
    """A construction produced something a theorem says it cannot."""


class WorkLimitExceeded(FinCatError, RuntimeError):
    pass


class BoundTooLargeForBase(WorkLimitExceeded):
    pass


# -- workspace files ----------------------------------------------------------


class WorkspaceError(FinCatError):
    """A problem in a workspace file, with its location when known."""

    def __init__(self, message, file=None, line=None):
        self.file = file
        self.line = line
        where = ""
        if file is not None:
            where = f"{file}:{line}: " if line is not None else f"{file}: "
        super().__init__(where + message)


class ParseError(WorkspaceError, ValueError):
    pass


class UnresolvedReference(WorkspaceError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class WorkspaceValidationError(WorkspaceError, ValidationError):
    """Wraps the library error raised while validating a workspace entry."""

    def __init__(self, cause, file=None, line=None, entry=None):
        self.cause = cause
        self.entry = entry
        label = f"{entry}: " if entry else ""
        super().__init__(f"{label}{type(cause).__name__}: {cause}", file, line)
