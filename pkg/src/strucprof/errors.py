"""Exception hierarchy.  Everything raised on bad input derives from ``StrucprofError``."""


class StrucprofError(ValueError):
    pass


class ArityMismatch(StrucprofError):
    pass


class VertexOutOfRange(StrucprofError):
    pass


class SignatureMismatch(StrucprofError):
    pass


class DomainMismatch(StrucprofError):
    pass


class NotAGraph(StrucprofError):
    pass


class NotOrdered(StrucprofError):
    pass


class OverlapError(StrucprofError):
    pass


class RangeError(StrucprofError):
    pass


class NotMonomorphic(StrucprofError):
    pass


class NotStabilized(StrucprofError):
    pass


class TooSmall(StrucprofError):
    pass


class MalformedTemplate(StrucprofError):
    pass


class SizeMismatch(StrucprofError):
    pass


class NotAGraphFamily(StrucprofError):
    pass


class NonUnitConstantTerm(StrucprofError):
    pass


class UnknownLetter(StrucprofError):
    pass


class ParseError(StrucprofError):
    pass


class PrefixCapExceededWarning(UserWarning):
    """Profile table did not stabilise before the prefix cap; returned with stabilized=False."""
