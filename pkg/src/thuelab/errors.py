"""Shared exception types."""


class ThuelabError(Exception):
    pass


class MalformedLogError(ThuelabError):
    """A log violates its invariants or cannot be replayed."""


class BenMismatchError(MalformedLogError):
    """A log's replay disagrees with the strategy it claims to come from."""
