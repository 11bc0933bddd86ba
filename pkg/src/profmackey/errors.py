"""Typed errors shared by every module.

Each error carries a short machine-readable name (the class name) so the
command line driver can turn it into a JSON error object.
"""


class DomainError(Exception):
    """Base class for all recoverable domain errors."""

    def to_json(self):
        return {"error": {"type": type(self).__name__, "message": str(self)}}


# groups and G-sets
class GroupTooLarge(DomainError):
    pass


class NotComparable(DomainError):
    pass


class InvalidAction(DomainError):
    pass


class InvalidGroup(DomainError):
    pass


class UnknownGroup(DomainError):
    pass


class GroupMismatch(DomainError):
    pass


class NotSubgroup(DomainError):
    pass


class CompositionMismatch(DomainError):
    pass


# Burnside rings, Mackey functors, towers
class UnknownLevel(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NotFinite(DomainError):
    pass


class NotNormal(DomainError):
    pass


class DepthExceeded(DomainError):
    pass


class IncompatibleThread(DomainError):
    pass


class IncompatibleLevels(DomainError):
    pass


class NotEquivariant(DomainError):
    pass


class InvalidInput(DomainError):
    pass


# spaces and sheaves
class PointNotInSpace(DomainError):
    pass


class EmptySpace(DomainError):
    pass


class HeightTooSmall(DomainError):
    pass


class UnsupportedSpace(DomainError):
    pass


class UnsupportedSheaf(DomainError):
    pass


class NoWitness(DomainError):
    pass


class SpaceSyntaxError(DomainError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_json(self):
        out = super().to_json()
        out["error"]["offset"] = self.offset
        return out
