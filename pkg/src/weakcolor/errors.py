class WeakColorError(Exception):
    """Base class for every error raised by the package."""


class InputError(WeakColorError, ValueError):
    """Malformed or out-of-range input (bad vertex ids, bad parameters, ...)."""


class PrecoloringError(InputError):
    """A precoloring violates its weak-diameter hypothesis.

    ``pair`` holds two vertices of one monochromatic component and
    ``distance`` their distance in the host graph.
    """

    def __init__(self, message, pair=None, distance=None):
        super().__init__(message)
        self.pair = pair
        self.distance = distance


class ContractError(WeakColorError):
    """A local colorer or oracle broke its declared guarantee."""

    def __init__(self, message, pair=None, distance=None):
        super().__init__(message)
        self.pair = pair
        self.distance = distance


class EngineInvariantError(WeakColorError):
    """An internal consistency check of the extension engine failed."""


class TooLargeError(WeakColorError):
    """An exhaustive enumeration would exceed its configured cap."""


class ClaimViolation(WeakColorError):
    """A checked combinatorial statement turned out false on an input."""


class DocumentError(InputError):
    """A JSON document could not be read or has the wrong shape.

    ``position`` is a human-readable location such as "line 3 column 7"
    or a key path like "edges[4]".
    """

    def __init__(self, message, position=None):
        super().__init__(f"{message} at {position}" if position else message)
        self.position = position
