"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class MalformedQuantale(EngineError):
    """A quantale operation was requested on tables that fail the law audit."""


class ShapeMismatch(EngineError):
    """Matrix shapes are incompatible for the requested operation."""


class BaseMismatch(EngineError):
    """Operands live over different quantales."""


class ExponentTooLarge(EngineError):
    """A function set Y^X would exceed the configured cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"function set of size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class CertificateFailure(EngineError):
    """A law check that must hold by construction failed (engine bug surfaced)."""


class NotAMonoid(EngineError):
    """Element lacks the monoid (or comonoid) inequalities; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class CoherenceFailure(EngineError):
    """Pseudofunctor coherence data failed its audit."""


class EnumerationCapExceeded(EngineError):
    """A universal-property enumeration would exceed its hard cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"total category with {size} morphisms exceeds cap {cap}")
        self.size = size
        self.cap = cap


class CategoryAuditError(EngineError):
    """Finite category / functor data violates the category axioms."""


class DimensionMismatch(EngineError):
    """Linear-algebra operands have incompatible dimensions or fields."""


class SearchSpaceTooLarge(EngineError):
    """Enumeration-based certification would exceed its bound."""

    def __init__(self, bound: int, limit: int):
        super().__init__(f"search space of size {bound} exceeds limit {limit}")
        self.bound = bound
        self.limit = limit


class MissingFibrewiseAdjoint(EngineError):
    """Fibred-adjunction check is missing adjunction data for some fibre."""
