"""Exception hierarchy shared across the package.

Three tiers matter for the CLI exit-code contract: input errors (exit 2),
domain errors (exit 3), and internal errors (exit 4).  Library code raises
the specific class; the CLI maps the tier.
"""


class PermbalError(Exception):
    """Base class for all package errors."""


class InputError(PermbalError):
    """Malformed input (bad one-line permutation, bad index set, ...)."""


class DomainError(PermbalError):
    """Structurally valid request with no answer in its domain."""


class InternalError(PermbalError):
    """A verified invariant failed; indicates a bug, not bad input."""


class NotABijection(InputError):
    """Sequence is not a bijection on {1..n}."""


class TiedCoordinates(InputError):
    """Two planar points share an x- or y-coordinate."""


class BadIndexSet(InputError):
    """Index set does not match the pattern order or exceeds [n]."""


class KOutOfRange(InputError):
    """Profile order k is not a positive integer."""


class NonIntegralResult(DomainError):
    """Downward induction did not divide exactly; the input profile is
    not the profile of any permutation."""


class OrderCapExceeded(DomainError):
    """Product expansion requested beyond the order-8 cap."""


class Inadmissible(DomainError):
    """n fails the divisibility conditions for the requested k."""


class ResidueUnknown(DomainError):
    """No insertion recipe for this residue class."""


class TBelowMinimum(DomainError):
    """Recipe parameter t below the verified minimum for its residue."""


class ConstructionGap(InternalError):
    """Admissible n covered by neither the stored table nor a recipe."""


class BudgetExceeded(DomainError):
    """Search would exceed the configured node budget."""


class ValidationMismatch(InternalError):
    """Interpolated polynomial failed at a held-out node."""


class DegreeBudgetExceeded(DomainError):
    """Moment extraction requested beyond the available profile orders."""


class Infeasible(DomainError):
    """No indicator polynomial fits within the degree budget."""


class InconsistentProfile(InputError):
    """Profile fails downward-induction integrality."""


class AmbiguousValue(InternalError):
    """Indicator evaluation landed inside the forbidden gap."""


class RegistryError(InputError):
    """Witness registry line is unreadable or fails re-verification."""
