"""Exception types shared across the package."""


class PolyCCError(Exception):
    """Base class for all polycc errors."""


class CollisionError(PolyCCError):
    """Two bodies closer than the collision tolerance."""


class NotCenteredError(PolyCCError):
    """Operation requires the center of mass at the origin."""


class DegenerateError(PolyCCError):
    """A coefficient that must be inverted vanished; no answer is guessed."""


class SingularityError(PolyCCError):
    """Evaluation requested exactly at a known singular point."""


class BracketCountError(PolyCCError):
    """A scan found a number of sign changes, but a different count was required.

    Raised loudly: an unexpected count contradicts a uniqueness claim the
    caller relies on.
    """

    def __init__(self, message, count=None, brackets=None):
        super().__init__(message)
        self.count = count
        self.brackets = brackets or []


class NoRootInBracketError(PolyCCError):
    """A root search came up empty; carries the scan trace for diagnosis."""

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan or {}
