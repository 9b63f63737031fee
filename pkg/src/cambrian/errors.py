"""Exception hierarchy shared by all modules.

Usage errors (bad input) derive from :class:`InputError`; internal consistency
violations (facts the library guarantees by construction) raise
:class:`StructureError`.  The command line maps these onto exit codes.
"""


class CambrianError(Exception):
    """Base class for all library errors."""


class InputError(CambrianError, ValueError):
    """Invalid user input: malformed signature, bad index pair, bad request."""


class SignatureParseError(InputError):
    """Signature text contains a character other than '+'/'-'.

    The offending position (1-based) is stored in ``position``.
    """

    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"invalid signature character at position {position}: {text!r}")


class InvalidInstance(InputError):
    """Index pair violates the standing assumptions or the signature's range."""


class NoPerfectMatching(CambrianError):
    """The bipartite instance admits no non-crossing perfect matching.

    ``prefix`` holds the smallest k whose counting condition fails, when known.
    """

    def __init__(self, message: str, prefix: int | None = None):
        self.prefix = prefix
        super().__init__(message)


class NotFlippable(InputError):
    """Requested a flip at an edge that only one maximal tree contains."""


class StructureError(CambrianError, RuntimeError):
    """An invariant the library relies on failed; indicates a genuine bug."""


class DegenerateLift(CambrianError):
    """A height function produced a tie where strictness is required."""


class UndecidedSign(CambrianError):
    """Interval refinement could not separate a radical expression from zero."""


class TooLarge(CambrianError):
    """Resource guard: the requested enumeration exceeds the configured bound."""
