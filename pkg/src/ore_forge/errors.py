"""Exception hierarchy shared by every ore_forge module."""


class OreForgeError(Exception):
    """Base class for library errors."""


class ParseError(OreForgeError, ValueError):
    """Malformed expression or presentation text."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class PresentationError(OreForgeError, ValueError):
    """Presentation data is structurally unusable (wrong shapes, bad indices)."""


class VerificationError(OreForgeError):
    """An exact identity that must hold did not hold."""


class ResourceLimitError(OreForgeError):
    """An iteration bound or term-count limit was exceeded."""
