"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when edge-list text or graph parameters are malformed."""


class InvalidPathError(ValueError):
    """Raised by validate_path when a sequence is not a u-v walk in G."""


class UnreachableError(ValueError):
    """Raised when a query pair lies in different connected components."""


class PaddingFailure(RuntimeError):
    """Randomized cover left some vertices unpadded; callers retry with a
    fresh seed. Carries the list of unpadded vertices."""

    def __init__(self, unpadded):
        self.unpadded = list(unpadded)
        super().__init__(f"{len(self.unpadded)} vertices unpadded")


class GapCoverMissError(ValueError):
    """Short-range path request whose target is outside every gap cover
    cluster of the source (precondition violation)."""


class SerializationError(ValueError):
    """Raised on truncated, corrupt, or version-mismatched documents."""
