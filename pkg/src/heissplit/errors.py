"""Exception types raised by the public API.

Every contract violation maps to a named subclass so callers can react to a
specific failure without string matching.  All of them derive from
:class:`HeisSplitError`, itself a ``ValueError``.
"""


class HeisSplitError(ValueError):
    """Base class for all errors raised by this package."""


class NotPrimeError(HeisSplitError):
    """An argument that must be prime is not."""


class DivisibilityError(HeisSplitError):
    """ell does not divide p - 1."""


class ZeroArgumentError(HeisSplitError):
    """Zero passed where a nonzero field element is required."""


class ZeroPolynomialError(HeisSplitError):
    """The zero polynomial passed where a nonzero one is required."""


class NotSquarefreeError(HeisSplitError):
    """Polynomial has a repeated factor where a squarefree one is required."""


class MixedModulusError(HeisSplitError):
    """Operands belong to different groups or fields."""


class DegenerateSpecializationError(HeisSplitError):
    """Specialization point where the unit product degenerates (root^ell = 1)."""


class WrongEllError(HeisSplitError):
    """Operation defined only for a specific ell (2, or >= 3)."""


class DegenerateValueError(HeisSplitError):
    """a lies in the excluded set ({0, 1}, plus 1/2 when ell = 2)."""


class NotResidueError(HeisSplitError):
    """a has no ell-th root in F_p where one is required."""


class PolynomialityViolationError(HeisSplitError):
    """Symbolic expansion produced exponents not divisible by ell (a bug)."""


class NoRootOfUnityError(HeisSplitError):
    """The field contains no element of multiplicative order ell."""


class UnsupportedEllError(HeisSplitError):
    """ell too large for this check without the explicit opt-in."""


class SymbolNotTrivialError(HeisSplitError):
    """A power residue symbol is nontrivial where triviality is required."""
