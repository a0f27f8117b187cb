"""Exception types shared across the package."""


class EulerTraceError(Exception):
    """Base class for all errors raised by this package."""


class NotAGroup(EulerTraceError):
    """Multiplication table fails a group axiom."""


class TooLarge(EulerTraceError):
    """Requested group exceeds the configured order cap."""


class GroupMismatch(EulerTraceError):
    """Operands live over different groups."""


class SizeMismatch(EulerTraceError):
    """Matrix shapes are incompatible."""


class NotIdempotent(EulerTraceError):
    """Trace of a non-idempotent matrix was requested without raw=True."""


class NotASubgroup(EulerTraceError):
    """Element subset is not a subgroup."""


class NotHomomorphism(EulerTraceError):
    """Element map does not respect multiplication."""


class NotInjective(EulerTraceError):
    """Edge embedding is not injective."""


class Disconnected(EulerTraceError):
    """Underlying graph of a graph of groups is not connected."""


class InputError(EulerTraceError):
    """Malformed input file."""
