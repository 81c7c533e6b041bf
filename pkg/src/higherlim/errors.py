"""Exception hierarchy.

``InputError`` covers anything a caller can fix by supplying different data.
``InvariantError`` means the library produced an inconsistent object; it is
always a bug and the CLI reports it with exit status 2.
"""

from __future__ import annotations


class HigherLimError(Exception):
    pass


class InputError(HigherLimError, ValueError):
    pass


class InvariantError(HigherLimError, AssertionError):
    pass


# posets
class DuplicateElement(InputError):
    pass


class UnknownElement(InputError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class CycleDetected(InputError):
    pass


class NotACover(InputError):
    pass


class SNotBelowP(InputError):
    pass


# linear algebra, complexes, diagrams
class ShapeMismatch(InputError):
    pass


class NotTruncatable(InputError):
    pass


class NonCommutingSquare(InputError):
    def __init__(self, p, q, x1, x2):
        self.p, self.q, self.x1, self.x2 = p, q, x1, x2
        super().__init__(
            f"F({p}<={q}) differs when factored through {x1!r} and through {x2!r}"
        )


class InvalidDiagram(InputError):
    pass


class InvalidComplex(InvariantError):
    pass


class InvalidChainMap(InvariantError):
    pass


class NotInLimit(InvariantError):
    pass


class EquivalenceViolated(InvariantError):
    pass
