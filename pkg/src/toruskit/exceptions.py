"""Exception hierarchy shared by the exact core, the simulator and the CLI."""


class ToruskitError(Exception):
    """Base class for all errors raised by toruskit."""


class ShapeError(ToruskitError, ValueError):
    """Matrix or vector dimensions do not fit the requested operation."""


class RankDeficientError(ToruskitError, ValueError):
    """A linear system has no unique solution because its matrix lacks full column rank."""


class BasisMismatchError(ToruskitError, ValueError):
    """Symbolic reals declared over different bases were combined."""


class PreconditionError(ToruskitError, ValueError):
    """An operation was called outside its domain (e.g. a zero frequency for orthogonality)."""


class ConfigError(ToruskitError):
    """A project configuration file is malformed.

    Parameters
    ----------
    path : str
        File the problem was found in.
    key : str
        Dotted location of the offending entry.
    expected : str
        Human readable description of the expected form.
    """

    def __init__(self, path, key, expected):
        self.path = path
        self.key = key
        self.expected = expected
        super().__init__(f"{path}: at '{key}': expected {expected}")
