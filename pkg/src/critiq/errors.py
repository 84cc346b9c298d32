"""Exception types shared across the package."""

from __future__ import annotations


class CritiqError(Exception):
    """Base class for all critiq errors."""


class SchemaViolation(CritiqError):
    """A design JSON document is missing a field or has an ill-typed value.

    ``path`` names the offending location, e.g. ``elements[2].font_size``.
    """

    def __init__(self, path: str, detail: str):
        self.path = path
        self.detail = detail
        super().__init__(f"{path}: {detail}")


class DuplicateId(CritiqError):
    """Two elements in one document share an id."""

    def __init__(self, element_id: str):
        self.element_id = element_id
        super().__init__(f"duplicate element id: {element_id!r}")


class EmptyInput(CritiqError):
    """An operation that requires at least one value received none."""


class StaleSuggestion(CritiqError):
    """A suggestion references an element that no longer exists."""

    def __init__(self, element_id: str):
        self.element_id = element_id
        super().__init__(f"suggestion targets missing element: {element_id!r}")


class UnknownSession(CritiqError):
    """A service request names a session id that is missing or invalid."""


class UnknownPrinciple(CritiqError):
    """A service request names a principle outside the supported four."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown principle: {name!r}")
