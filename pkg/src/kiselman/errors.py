"""Shared exception types."""


class ResourceGuardError(RuntimeError):
    """A configured size or work limit would be exceeded."""


class HkDisagreementError(RuntimeError):
    """The two independent Hecke-Kiselman enumerations disagree.

    This always indicates an implementation bug in one of the two
    algorithms, never a mathematical event; it must not be silenced.
    """
