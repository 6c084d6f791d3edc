import copy
from typing import Optional, Tuple


class TccException(Exception):
    """
    Base tccmap exception class.

    This exception is not raised directly. Other exceptions inherit it in
    order to display the lattice location they refer to.
    """
    def __init__(self, message='Error Message not found.', item=None):
        """
        Exception initializer.

        Arguments
        ---------
        message : str
            Error message to display with the exception.
        item : tuple, optional
            Tuple of (kind, index) naming the lattice element where the
            exception occured, e.g. ``("face", 3)`` or ``("vertex", 0)``.
        """
        self.message = message
        self.kind: Optional[str] = None
        self.index: Optional[int] = None

        if isinstance(item, tuple):
            self.kind, self.index = item[:2]

    def with_annotation(self, kind: str, index: int) -> 'TccException':
        """
        Creates a copy of this exception pointing at another lattice element.

        Arguments
        ---------
        kind : str
            Element kind ("vertex", "face", "site", "triangle", "qubit", ...).
        index : int
            Element index.

        Returns
        -------
        A copy of the exception with the new location applied.
        """
        exc = copy.copy(self)
        exc.kind = kind
        exc.index = index
        return exc

    @property
    def location(self) -> Optional[Tuple[str, int]]:
        if self.kind is None:
            return None
        return (self.kind, self.index)  # type: ignore

    def __str__(self):
        if self.kind is not None:
            return f'{self.kind} {self.index}: {self.message}'
        return self.message


class ColoringException(TccException):
    """Lattice dimensions admit no proper 3-coloring."""


class LatticeStructureException(TccException):
    """Lattice input is not a valid colex, triangulation or patch."""


class RoleViolation(TccException):
    """Operator requested in a role the face does not carry."""


class LengthMismatch(TccException):
    """Operands are defined over a different number of qubits, sites or triangles."""


class CapExceeded(TccException):
    """Enumeration or dense state size exceeds the configured cap."""


class InvalidParameter(TccException):
    """Numeric argument outside its domain."""


class MappingDomainException(TccException):
    """Product state coefficient outside the string-net expansion domain."""


class DictionaryDomainException(TccException):
    """Product state cannot be written as complex 3-body couplings."""


class SingularCoupling(TccException):
    """Coupling on the singular set cosh = 0 of the high-temperature expansion."""


class HomologyObstruction(TccException):
    """Lattice has closed string-nets that are not boundaries."""


class ImpossibleOutcome(TccException):
    """Projection onto a measurement outcome of zero probability."""


class NonOrthonormalBasis(TccException):
    """Single-qubit measurement basis is not orthonormal."""


class ConvergenceException(TccException):
    """Iterative solver did not converge within its iteration limit."""


class UsageError(TccException):
    """Invalid command-line usage."""


class JSONError(Exception):

    """Invalid lattice, couplings, fields or basis JSON."""

    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class TccInternalException(Exception):
    """
    Base tccmap internal exception class.

    This exception is not raised directly, it is subclassed by other internal
    exceptions.

    Internal exceptions signal an inconsistent lattice produced by tccmap
    itself. They should never be exposed to the user.
    """
    def __init__(self, message=""):
        self.message = message

    def __str__(self):
        return f"{self.message} Please create an issue."


class LatticePanic(TccInternalException):
    """Lattice built by tccmap violates an algebraic invariant."""
