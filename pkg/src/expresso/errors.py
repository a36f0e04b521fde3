"""Exception hierarchy shared by every module of the package."""


class ExpressoError(Exception):
    """Base class for all errors raised by expresso."""


class ResourceLimit(ExpressoError):
    """A configured enumeration cap was exceeded."""


class ParseError(ExpressoError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


# relational side
class InvalidRelation(ExpressoError, ValueError):
    pass


class InvalidDatabase(ExpressoError, ValueError):
    pass


class ArityMismatch(ExpressoError, ValueError):
    pass


class IndexOutOfRange(ExpressoError, IndexError):
    pass


class DegreeMismatch(ExpressoError, ValueError):
    pass


class ElementOutOfRange(ExpressoError, ValueError):
    pass


class NotASubgroup(ExpressoError, ValueError):
    pass


class NonDivisor(ExpressoError, ArithmeticError):
    """|G| / |H| was not an integer; impossible for a genuine subgroup."""


class GroundMismatch(ExpressoError, ValueError):
    pass


class UniverseMismatch(ExpressoError, ValueError):
    pass


class CriteriaDisagreement(ExpressoError):
    """Two decision procedures that must agree returned different verdicts."""


# graph side
class InvalidGraphDatabase(ExpressoError, ValueError):
    pass


class InvalidInstance(ExpressoError, ValueError):
    pass


class DomainMismatch(ExpressoError, ValueError):
    pass


class NotWeaklyConnected(ExpressoError, ValueError):
    pass


class NotSubdomain(ExpressoError, ValueError):
    pass


class EmptyInstance(ExpressoError, ValueError):
    pass


class EmptySelection(ExpressoError, ValueError):
    pass


class NotInImage(ExpressoError, ValueError):
    pass


class NotInSet(ExpressoError, ValueError):
    pass


class NotDisjoint(ExpressoError, ValueError):
    pass


class DatabaseMismatch(ExpressoError, ValueError):
    pass


class NoMaximum(ExpressoError):
    """Exhaustive enumeration found several maximal valid partitions."""
