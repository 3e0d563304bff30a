"""Shared exception types.

The CLI maps these onto exit statuses: usage/parse problems (including
``ValueError`` and ``AnfSyntaxError``) exit 2, ``CapacityError`` exits 3,
``CrossCheckError`` exits 4.
"""


class CapacityError(Exception):
    """A requested problem size exceeds the library's exact-arithmetic guards."""


class AnfSyntaxError(ValueError):
    """Malformed ANF expression. ``position`` is the 1-based column of the offence."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.position = position


class CrossCheckError(Exception):
    """Two independent computation routes disagreed; this must never happen."""
