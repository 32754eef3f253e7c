"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """A computation would need more pi-adic digits than are certified; raise m."""


class Indeterminate(RuntimeError):
    """A bounded search gave up; the question is undecided, not answered negatively."""
