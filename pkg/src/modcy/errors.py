"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ModcyError(Exception):
    """Base class for library errors."""


class DegenerateInput(ModcyError):
    """Input is degenerate or has bad reduction; the shell maps this to exit 3."""


class BadReduction(DegenerateInput):
    pass


class BadPrime(DegenerateInput):
    pass


class DegenerateLine(DegenerateInput):
    pass


class DegeneratePoint(DegenerateInput):
    pass


class NotGeneral(DegenerateInput):
    pass


class SingularFibre(DegenerateInput):
    pass


class InconsistentConditions(ModcyError):
    pass


class NotFound(ModcyError):
    pass


class CacheCorrupt(ModcyError):
    pass


class SingularFit(ModcyError):
    pass


class InconsistentFit(ModcyError):
    pass
