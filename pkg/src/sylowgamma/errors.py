"""Exception types shared across the package.

The CLI maps each class to an exit code: ``GroupSyntaxError`` and other
``ValueError`` subclasses to 1, ``Refusal`` to 2, ``CrossCheckError`` to 3.
"""


class GroupSyntaxError(ValueError):
    """A group expression or cycle string could not be parsed."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class Refusal(RuntimeError):
    """A computation was declined because it exceeds a configured cap or budget."""


class CrossCheckError(AssertionError):
    """Two independent routes disagreed, or a mathematical invariant failed.

    This always indicates a bug in one of the engines.
    """
