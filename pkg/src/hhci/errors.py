"""Exception hierarchy shared by all modules."""


class HHCIError(Exception):
    """Base class for every error raised by hhci."""

    kind = "error"

    def to_json(self):
        return {"type": type(self).__name__, "message": str(self)}


class InputError(HHCIError, ValueError):
    """Input that is well formed text but not a valid object (bad schema, zero relation)."""


class ParseError(InputError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        out["position"] = self.position
        return out


class UnknownVariable(ParseError):
    def __init__(self, name, position=None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position)


class ComplexError(HHCIError):
    """The two maps handed to ``cohomology_at`` do not compose to zero."""


class DomainError(HHCIError):
    """Operation requested over a coefficient ring where it is not defined."""


class StrategyError(HHCIError):
    """A normal-form or regularity strategy cannot be applied to a presentation."""


class NotRegular(StrategyError):
    """The relations were checked and do not form a regular sequence."""


class InfiniteBasis(HHCIError):
    """The algebra is not finitely generated as a module over the coefficients."""


class NotADerivation(HHCIError):
    pass


class ZeroDivisor(HHCIError):
    pass


class SizeError(HHCIError):
    """Input exceeds the size limits of a brute-force computation."""
