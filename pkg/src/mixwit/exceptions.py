"""Exception hierarchy shared across the package."""


class MixwitError(ValueError):
    """Base class for all errors raised by mixwit."""


class NonHermitian(MixwitError):
    pass


class NonFinite(MixwitError):
    pass


class ShapeMismatch(MixwitError):
    pass


class DimensionMismatch(MixwitError):
    pass


class NotAState(MixwitError):
    """Raised when a matrix fails a density-matrix invariant.

    The message always names the violated invariant (``hermitian``,
    ``trace`` or ``positivity``), also available as :attr:`invariant`.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"not a density matrix: {invariant} invariant violated"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class PurityOutOfRange(MixwitError):
    pass


class RejectionExhausted(MixwitError):
    pass


class InvalidOrder(MixwitError):
    pass


class NoSignChange(MixwitError):
    pass


class OddQubitCount(MixwitError):
    pass


class ParseError(MixwitError):
    pass
