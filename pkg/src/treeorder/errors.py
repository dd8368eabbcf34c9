"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class TreeOrderError(ValueError):
    code = "ERROR"

    def __init__(self, message=""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class InvalidInputError(TreeOrderError):
    code = "INVALID_INPUT"


class DisjointnessError(TreeOrderError):
    code = "DISJOINTNESS"


class GenericTieError(TreeOrderError):
    code = "GENERIC_TIE"

    def __init__(self, z, x, y):
        self.triple = (z, x, y)
        super().__init__(f"d({z}, {x}) == d({z}, {y})")


class DisconnectedError(TreeOrderError):
    code = "DISCONNECTED"


class UnalignedEdgeError(TreeOrderError):
    code = "UNALIGNED_EDGE"


class ClauseArityError(TreeOrderError):
    code = "CLAUSE_ARITY"


class DuplicateVariableError(TreeOrderError):
    code = "DUPLICATE_VARIABLE"


class RangeError(TreeOrderError):
    code = "RANGE"


class NonnegativityError(TreeOrderError):
    code = "NONNEGATIVITY"


class CapExceededError(TreeOrderError):
    code = "CAP_EXCEEDED"


class FormatError(TreeOrderError):
    code = "FORMAT"
