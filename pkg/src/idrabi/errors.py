"""Exceptions shared across the package."""


class DivergentRegimeError(ValueError):
    """Raised when a closed form is requested outside its validity window g < omega/2."""


class NonDegenerateQubitError(ValueError):
    """Raised when a construction that requires omega0 = 0 gets a split qubit."""


class EigensolverError(RuntimeError):
    """QL sweep failed to deflate an eigenvalue within the iteration cap.

    The index of the offending eigenvalue is stored in ``index``.
    """

    def __init__(self, index: int, max_sweeps: int):
        self.index = int(index)
        self.max_sweeps = int(max_sweeps)
        super().__init__(
            f"eigenvalue {self.index} did not converge within {self.max_sweeps} QL sweeps"
        )
