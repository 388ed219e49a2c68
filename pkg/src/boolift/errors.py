class BooliftError(Exception):
    """Base class for all library errors."""


class SpecSyntaxError(BooliftError, ValueError):
    def __init__(self, text, pos, msg):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos} in {text!r}")


class PreconditionError(BooliftError, ValueError):
    pass


class CapExceeded(BooliftError):
    pass


class UndefinedInput(BooliftError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "undefined input"


class NoSmallPlan(PreconditionError):
    """switch(f) >= n/2: the trivial n-query basis is the fallback."""
