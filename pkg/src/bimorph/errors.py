"""Exception hierarchy shared by every module."""


class BimorphError(Exception):
    """Base class. ``witness`` carries a counterexample when one is known."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainMismatch(BimorphError, ValueError):
    pass


class TypeMismatch(BimorphError, ValueError):
    pass


class ArityMismatch(TypeMismatch):
    pass


class CarrierMismatch(TypeMismatch):
    pass


class MonadMismatch(BimorphError, ValueError):
    pass


class SizeBudgetExceeded(BimorphError):
    """An enumeration would exceed the configured element/map budget."""

    def __init__(self, what, needed, budget):
        shown = needed if needed.bit_length() <= 64 else f"~2^{needed.bit_length() - 1}"
        super().__init__(f"{what}: needs {shown} > budget {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


class NotAMorphism(BimorphError):
    pass


class NotABimorphism(BimorphError):
    pass


class NotAnAlgebra(BimorphError):
    pass


class NotInvertible(BimorphError):
    pass


class NaturalitySquareFails(BimorphError):
    pass


class KleisliAxiomFails(BimorphError):
    pass


class ParseError(BimorphError):
    def __init__(self, message, path=None, line=None):
        where = f"{path or '<input>'}:{line}" if line is not None else (path or "<input>")
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class ValidationError(BimorphError):
    """A workspace definition failed a construction-time axiom check."""

    def __init__(self, definition, axiom, witness=None):
        super().__init__(f"{definition}: {axiom} fails (witness {witness})", witness)
        self.definition = definition
        self.axiom = axiom


class NonCommutativeWarning(UserWarning):
    """dst and dst' differ on the sets involved; checks run with dst."""
