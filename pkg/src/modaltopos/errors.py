"""Exception hierarchy shared by all modules.

Validation entry points collect every problem they can find and raise a
single error whose ``findings`` lists the individual failures, so batch
tools can report them all at once.
"""


class ModalToposError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ModalToposError):
    """Malformed user input (files, CLI arguments, descriptions)."""


class ValidationError(ModalToposError):
    def __init__(self, message, findings=None):
        super().__init__(message)
        self.findings = list(findings or [])


# -- finite categories -------------------------------------------------------

class CategoryError(ValidationError):
    pass


class MissingIdentity(ModalToposError):
    pass


class NonAssociative(ModalToposError):
    pass


class UndefinedComposite(ModalToposError):
    pass


class DomCodMismatch(ModalToposError):
    pass


class NotReflexive(ModalToposError):
    pass


class NotTransitive(ModalToposError):
    pass


class NotAPreorder(ModalToposError):
    pass


class UnknownObject(ModalToposError):
    pass


# -- presheaves and transformations ------------------------------------------

class PresheafError(ValidationError):
    pass


class BaseMismatch(ModalToposError):
    pass


class SourceMismatch(ModalToposError):
    pass


class ShapeMismatch(ModalToposError):
    pass


class NaturalityError(ModalToposError):
    """A component family fails a naturality square."""


class NotClosedUnderRestriction(ModalToposError):
    pass


class SizeGuardExceeded(ModalToposError):
    pass


# -- frames -------------------------------------------------------------------

class HeytingAxiomFailure(ModalToposError):
    def __init__(self, axiom, obj, witness):
        super().__init__(
            "axiom %s fails at object %s on %r" % (axiom, obj, witness))
        self.axiom = axiom
        self.obj = obj
        self.witness = witness


class NonNaturalStructureMap(ModalToposError):
    pass


class FrameError(ValidationError):
    pass


class NotAFrameMap(ModalToposError):
    pass


class UniquenessViolation(ModalToposError):
    """More than one frame map out of the sieve presheaf was found.

    This contradicts initiality on every valid finite instance, so it
    always signals a bug and must never be resolved silently.
    """


class FaithfulnessFailure(ModalToposError):
    pass


class InternalCheckError(ModalToposError):
    """A redundant cross-check disagreed with the primary computation."""


# -- syntax -------------------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message, line=None, col=None):
        loc = "" if line is None else " at %d:%d" % (line, col)
        super().__init__(message + loc)
        self.line = line
        self.col = col


class TypeError_(ModalToposError):
    """Base for typechecking failures; carries a source location."""

    def __init__(self, message, span=None):
        loc = "" if not span else " at %d:%d" % span
        super().__init__(message + loc)
        self.span = span


class UnboundVariable(TypeError_):
    pass


class TypeMismatch(TypeError_):
    def __init__(self, expected, got, span=None):
        super().__init__("expected %s, got %s" % (expected, got), span)
        self.expected = expected
        self.got = got


class NotAProposition(TypeError_):
    pass


# -- semantics / forcing ------------------------------------------------------

class UndeclaredBaseType(ModalToposError):
    pass


class UndeclaredSymbol(ModalToposError):
    pass


class NonGeometricFrame(ModalToposError):
    pass


class SizeTooSmall(ModalToposError):
    pass
