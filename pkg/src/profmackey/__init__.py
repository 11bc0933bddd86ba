"""Exact rational computations with Mackey functors for finite and profinite
groups, equivariant sheaves on subgroup spaces, and Cantor-Bendixson data of
scattered spaces."""

from .errors import DomainError

__version__ = "0.1.0"
__all__ = ["DomainError", "__version__"]
