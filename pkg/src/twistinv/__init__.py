"""Alev-Dumas and cocycle-twist invariants of graded quantum algebras."""

from .errors import CrossCheckError, PreconditionError, SchemaError, TwistInvError

__version__ = "0.1.0"

__all__ = ["CrossCheckError", "PreconditionError", "SchemaError", "TwistInvError", "__version__"]
