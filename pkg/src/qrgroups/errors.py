"""Exception hierarchy shared across the package.

Every error carries a ``category`` used by the command line client to pick
an exit code: ``usage`` for bad arguments or out-of-contract inputs,
``resource`` for exhausted budgets, and ``verification`` for checks that
ran to completion but failed.
"""

from __future__ import annotations


class QRGroupsError(Exception):
    """Base class for all package errors."""

    category = "usage"


class ResourceExhausted(QRGroupsError):
    """A configured size or time budget was exceeded."""

    category = "resource"


class NotAUnit(QRGroupsError):
    """Inversion was requested for a residue sharing a factor with the modulus."""


class UnsupportedModulus(QRGroupsError):
    """The residue ring falls outside the supported odd prime-power range."""


class TooLarge(ResourceExhausted):
    """An enumeration or table would exceed the configured budget."""


class UnsupportedFamily(QRGroupsError):
    """The requested operation is not defined for this group family."""


class UnsupportedPrime(QRGroupsError):
    """A bound formula only valid for odd primes was called with p = 2 or a composite."""


class UnsupportedParameters(QRGroupsError):
    """Parameters are syntactically fine but outside the formula's stated range."""


class OutOfTheoremRange(QRGroupsError):
    """No proved bound covers the requested parameters."""


class PrimeSearchFailed(ResourceExhausted):
    """No working prime for the modular character algorithm below the search limit."""


class TrivialGroup(QRGroupsError):
    """The group has no nontrivial representation to measure."""


class NotCommuting(QRGroupsError):
    """A joint eigenspace decomposition needs a commuting family."""


class NotUnitary(QRGroupsError):
    """A matrix expected to be unitary is not, beyond tolerance."""


class NotNormalizing(QRGroupsError):
    """The conjugating element does not permute the root subspaces."""


class GroupMismatch(QRGroupsError):
    """Two functions or sets live on different groups."""


class MeanNotZero(QRGroupsError):
    """A mixing inequality requiring a mean-zero factor was called without one."""


class NotProper(QRGroupsError):
    """A proper subgroup was required but the whole group was supplied."""


class PreconditionUnmet(QRGroupsError):
    """A theorem's hypothesis fails, so its conclusion is not claimed."""
