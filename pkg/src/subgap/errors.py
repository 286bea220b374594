"""Exception types shared across the package."""


class SubgapError(Exception):
    """Base class for all errors raised by this package."""


class GridMismatchError(SubgapError, ValueError):
    """Two objects that must share a grid do not."""


class NotBandlimitedError(SubgapError, ValueError):
    """An input required to be bandlimited carries out-of-band energy."""


class RefusalError(SubgapError, RuntimeError):
    """A solver refused to run because its invertibility guard failed.

    The message carries the measured quantities (WT, largest eigenvalue,
    condition number) so the caller can see why.
    """


class NonConvergenceError(SubgapError, RuntimeError):
    """An iterative solver hit its iteration cap without converging."""


class ConfigError(SubgapError, ValueError):
    """An experiment config failed validation; the message names the field."""


class DegenerateDesignError(RefusalError):
    """A least-squares design matrix is numerically rank deficient.

    Attributes
    ----------
    pairs : list
        The (row, column) index pairs whose design columns are nearly
        parallel, when that diagnosis applies.
    """

    def __init__(self, message, pairs=None):
        super().__init__(message)
        self.pairs = list(pairs) if pairs is not None else []
