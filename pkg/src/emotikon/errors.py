"""Exception hierarchy. DataError covers anything caused by bad input files."""


class DataError(Exception):
    """Malformed or inconsistent input data (maps to CLI exit code 2)."""


class LexiconError(DataError):
    pass


class CorpusError(DataError):
    pass


class ConfigError(DataError):
    pass


class VectorFileError(DataError):
    pass


class TrainingError(RuntimeError):
    """Raised when a training precondition fails (empty corpus/vocabulary)."""
