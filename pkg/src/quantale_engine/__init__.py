"""Exact computation of enrichment and fibration structures over finite
quantales: Kleene-style closures, Sweedler homs and measuring objects as
lattice fixpoints, a finite-category fibration kernel, and measuring
verification for finite-dimensional (co)algebras over exact scalars."""

from .base import Quantale, audit_laws, boolean, builtin, tropical

__version__ = "0.1.0"

__all__ = ["Quantale", "audit_laws", "boolean", "builtin", "tropical",
           "__version__"]
