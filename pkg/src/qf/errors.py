"""Error types shared by every module.

Each error carries a short ``code`` which the command line front end prints
on standard error. By default the code is the class name.
"""


class QFError(Exception):
    """Base class for all domain errors."""

    code = None

    def __init__(self, message=""):
        super().__init__(message)
        if self.code is None:
            self.code = type(self).__name__


class NotAPartialOrder(QFError):
    pass


class NotALattice(QFError):
    pass


class UnknownElement(QFError):
    pass


class SizeCapExceeded(QFError):
    pass


class NotJoinPreserving(QFError):
    pass


class NotMeetPreserving(QFError):
    pass


class NotSupercontinuous(QFError):
    pass


class NotAssociative(QFError):
    pass


class NotCommutative(QFError):
    pass


class NotBilinear(QFError):
    pass


class BadUnit(QFError):
    pass


class NotTwoSided(QFError):
    pass


class NotANucleus(QFError):
    pass


class NotAHomomorphism(QFError):
    pass


class SearchCapExceeded(QFError):
    pass


class PresentationSyntaxError(QFError):
    """Malformed presentation text. Reported under the code ``SyntaxError``."""

    code = "SyntaxError"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class UndeclaredGenerator(QFError):
    pass


class DuplicateGenerator(QFError):
    pass


class CapExceeded(QFError):
    def __init__(self, message="", degree=None):
        self.degree = degree
        super().__init__(message)


class ElementCapExceeded(QFError):
    pass


class RingAxiomViolation(QFError):
    pass


class NotMultiplicativeSet(QFError):
    pass


class NotLocal(QFError):
    pass


class SchemaError(QFError):
    def __init__(self, path, detail):
        self.path = path
        self.detail = detail
        super().__init__(f"{path}: {detail}")


class UsageError(QFError):
    pass
